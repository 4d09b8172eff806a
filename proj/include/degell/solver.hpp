#pragma once

#include "degell/domain.hpp"
#include "degell/grid.hpp"
#include "degell/hamiltonians.hpp"
#include "degell/operators.hpp"
#include "degell/params.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace degell {

/// F(x, D^2u) + H(Du) = f in the domain, u = 0 on its boundary.
struct Problem {
    OperatorSpec op;
    HamiltonianSpec ham;
    Params params;
    ConvexDomain domain;
    ScalarField f;
};

/// ||(f - c)^-||_inf from the declared lower bound of f.
double forcing_negative_part(const Problem& problem);

enum class InitialGuess { Zero, Barrier, Field };

struct SolveControls {
    double tau = 0.0;   // 0: the stability bound h^2 / (4 W)
    double tol = 1e-8;  // stop when max |F_h + H_h - f| <= tol (1 + ||f||_inf)
    long max_iter = 2'000'000;
    int threads = 1;
    InitialGuess init = InitialGuess::Zero;
    std::optional<Eigen::VectorXd> initial; // for InitialGuess::Field
    long history_stride = 100;
};

struct SolveReport {
    long iterations = 0;
    double update_norm = 0.0;   // last max |u_new - u|
    double residual_norm = 0.0; // max |F_h + H_h - f| of the returned field
    double tau = 0.0;
    double wall_seconds = 0.0;
    std::vector<double> residual_history;
};

struct SolveResult {
    GridFunction u;
    SolveReport report;
};

/// F_h at a node: lambda_1 ~ min over the stencil directions, lambda_2 ~ max,
/// Tr(A X) through a per-node Selling decomposition of A = Sigma^T Sigma.
/// Throws UnsupportedDiscretization for Monge-Ampere, sup-inf families and N != 2 entries.
double discrete_operator(const OperatorSpec& spec, const GridFunction& u, int node);
double discrete_hamiltonian(const HamiltonianSpec& ham, const GridFunction& u, int node);

/// Damped Jacobi pseudo-time iteration u <- u + tau_i (F_h + H_h - f). Superlinear problems are
/// refused with ThresholdViolation when R > Rbar at M = ||(f - c)^-||_inf. Output is
/// bit-identical for any thread count.
SolveResult solve(const Problem& problem, std::shared_ptr<const Grid2D> grid, const SolveControls& controls = {});

/// max over the unknowns of |F_h[u] + H_h[u] - f|.
double residual_norm(const Problem& problem, const GridFunction& u);

/// Stability bound h^2 / (4 W) with W the Hessian weight of the operator.
double stable_tau(const OperatorSpec& op, double h);

/// Lattice symmetric-matrix decomposition A = sum_i w_i e_i e_i^T, w_i >= 0, e_i in Z^2.
struct SellingTerm {
    Eigen::Vector2i e;
    double weight;
};
std::vector<SellingTerm> selling_decomposition(const Eigen::Matrix2d& A);

void write_solution_csv(std::ostream& out, const GridFunction& u);
/// timing = false keeps the output reproducible byte for byte.
void write_solve_report(std::ostream& out, const SolveReport& report, bool timing = true);

} // namespace degell
