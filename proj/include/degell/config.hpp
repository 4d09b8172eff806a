#pragma once

#include "degell/domain.hpp"
#include "degell/hamiltonians.hpp"
#include "degell/operators.hpp"
#include "degell/params.hpp"
#include "degell/solver.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace degell {

struct OperatorConfig {
    std::string kind = "WeightedEigenvalues";
    std::vector<double> alpha{0.0, 2.0};
    int index = 1;                  // LambdaK
    int k = 1;                      // TruncatedLower / TruncatedUpper
    int i = 1;                      // NonconvexPair
    int j = 1;
    double a = 1.0;                 // CoefficientLambdaN, constant coefficient
    std::vector<double> sigma;      // LinearDegenerate, constant N x N matrix, row-major
    friend bool operator==(const OperatorConfig&, const OperatorConfig&) = default;
};

struct HamiltonianConfig {
    std::string kind = "PowerNorm"; // growth b, p come from [params]
    std::vector<double> A;          // AnisotropicPower, N x N row-major
    double bump_amplitude = 1.0;    // CompactPerturbation: amplitude (1 - |xi|^2/rho^2)^2 on |xi| < rho
    double bump_radius = 1.0;
    friend bool operator==(const HamiltonianConfig&, const HamiltonianConfig&) = default;
};

struct SolverConfig {
    double h = 1.0 / 32.0;
    int K = 8;
    double tau = 0.0;
    double tol = 1e-8;
    long max_iter = 2'000'000;
    std::string init = "zero";      // zero | barrier
    friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

struct RadialConfig {
    std::string branch = "FirstZeroSuperlinear";
    double R = 1.0;
    int nodes = 512;
    double r_min = 0.0;
    friend bool operator==(const RadialConfig&, const RadialConfig&) = default;
};

struct ExplicitConfig {
    std::string kind = "Lambda1";
    double p = 0.5;
    double R = 1.0;
    int N = 2;
    std::vector<double> radii{0.3, 0.6, 0.9};
    friend bool operator==(const ExplicitConfig&, const ExplicitConfig&) = default;
};

struct SweepConfig {
    std::vector<double> factors{0.9, 1.0, 1.1}; // multiples of Rbar
    int probe_nodes = 256;
    friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

/// Everything a CLI run needs. INI layout: sections [run] [params] [operator] [hamiltonian]
/// [domain] [forcing] [solver] [radial] [explicit] [sweep] [output]; lists are space separated,
/// domain centers are "x y; x y; ...".
struct RunConfig {
    std::string command = "solve";
    Params params;
    int dimension = 2;
    OperatorConfig op;
    HamiltonianConfig ham;
    double domain_radius = 1.0;
    std::vector<std::vector<double>> centers{{0.0, 0.0}};
    double forcing = -1.0;
    SolverConfig solver;
    RadialConfig radial;
    ExplicitConfig explicit_solution;
    SweepConfig sweep;
    std::string output_dir = ".";
    std::uint64_t seed = 1;
    int threads = 1;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws InvalidInput on syntax errors, unknown keys or bad values.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

/// Builders; each validates and throws InvalidInput.
OperatorSpec make_operator(const RunConfig& config);
HamiltonianSpec make_hamiltonian(const RunConfig& config);
ConvexDomain make_domain(const RunConfig& config);
Problem make_problem(const RunConfig& config);
SolveControls make_controls(const RunConfig& config);

/// Catalog bump used by the CompactPerturbation entry of the config.
HamiltonianSpec make_polynomial_bump_hamiltonian(double p, double amplitude, double radius);

} // namespace degell
