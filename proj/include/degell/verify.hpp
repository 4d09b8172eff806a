#pragma once

#include "degell/closed_forms.hpp"
#include "degell/hamiltonians.hpp"
#include "degell/operators.hpp"
#include "degell/params.hpp"
#include "degell/solver.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace degell {

/// Pointwise data of F(x, D^2u) + s H(Du) = f; s = -1 writes det(D^2u)^{1/N} = |Du|^p.
struct PointwiseProblem {
    OperatorSpec op;
    HamiltonianSpec ham;
    ScalarField f;
    int dimension = 2;
    double ham_sign = 1.0;
};

struct ResidualReport {
    std::string name;
    std::vector<double> radii;
    std::vector<double> residuals;
    double max_abs = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string to_text() const;
};

/// Residual F + s H - f of a radial candidate at x = r e_1, with the Hessian diag(u'', u'/r, ..., u'/r).
/// Missing derivatives use 5-point differences at step 1e-5 (cross-checked at 2e-5).
/// Radii must lie within [r_lo + 1e-3, r_hi - 1e-3].
ResidualReport residual_check_radial(const RadialFunction& candidate, const PointwiseProblem& problem,
                                     const std::vector<double>& radii, double tolerance);

/// Operator, Hamiltonian |xi|^p and sign for the zero right-hand side explicit solutions
/// (LambdaI uses i = N: the tangential eigenvalue has multiplicity N - 1).
PointwiseProblem explicit_sublinear_problem(ExplicitKind kind, double p, int N);

/// C^2 field with explicit derivatives.
struct SmoothField {
    std::function<double(const Point&)> value;
    std::function<Vector(const Point&)> gradient;
    std::function<SymMatrix(const Point&)> hessian;
};

/// u(|x - y|) in R^N.
SmoothField radial_field(const RadialFunction& u, const Point& center);

struct CertifiedField {
    SmoothField field;
    double slack = 0.0;
};

/// v_sigma = sigma v + (1 - sigma) varphi with certified slack (1 - sigma) eps.
CertifiedField sigma_perturbation(const SmoothField& v, const SmoothField& varphi, double eps, double sigma);

/// v_eps = (1 + eps) v with certified slack -eps sup_f (requires sup_f < 0).
CertifiedField epsilon_scaling(const SmoothField& v, double eps, double sup_f);

struct CertificateReport {
    double certified_slack = 0.0;
    std::vector<double> chain_slack;     // slack recomputed through the proof's inequality chain
    std::vector<double> residual_margin; // f - (F + H)(certified field)
    double max_chain_deviation = 0.0;    // max |chain_slack - certified_slack|
    double min_margin = kInf;
    bool passed = false;
    std::string to_text() const;
};

/// Checks the sigma certificate at the sample points: the chain
/// f - sigma (F + H)(v) - (1 - sigma)(beta lambda_N(D^2 varphi) + b |D varphi|^p + c)
/// against (1 - sigma) eps, and the direct margin against the certified slack.
CertificateReport validate_sigma(const PointwiseProblem& problem, const Params& params, const SmoothField& v,
                                 const SmoothField& varphi, double eps, double sigma,
                                 const std::vector<Point>& points, double tolerance = 1e-10);

/// Checks the epsilon certificate: chain f - (1 + eps)(F + H)(v) + eps (f - sup_f) against -eps sup_f,
/// and the direct margin; also samples eps H(xi) <= H(eps xi) for eps in (0, 1).
CertificateReport validate_epsilon(const PointwiseProblem& problem, const SmoothField& v, double eps, double sup_f,
                                   const std::vector<Point>& points, std::uint64_t seed = 7,
                                   double tolerance = 1e-10);

struct ThresholdVerdict {
    double R = 0.0;
    bool exists = false;
    bool endpoint = false;
    double r_star = 0.0; // first failing probe radius
    double gap = 0.0;    // phi(r*, s1(r*)) > 0
};

/// first_zero on the probe grid R i / n, i = 1..n (p > 1).
std::vector<ThresholdVerdict> threshold_probe(const Params& params, const std::vector<double>& R_values,
                                              int probe_nodes = 256);
std::string to_string(const ThresholdVerdict& verdict);

struct ConvergenceRow {
    double h = 0.0;
    double error = 0.0;
    double order = 0.0; // log2(e_prev / e) scaled by the h ratio; 0 on the first row
    long iterations = 0;
    double seconds = 0.0;
};

/// Solves on each h and compares with u(|x - center|) at every unknown.
std::vector<ConvergenceRow> convergence_study(const Problem& problem, const std::vector<double>& h_list,
                                              const std::function<double(double)>& oracle, const Point& center,
                                              int K = 8, const SolveControls& controls = {},
                                              const std::function<Eigen::VectorXd(const Grid2D&)>& initial = {});
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

} // namespace degell
