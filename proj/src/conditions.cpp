#include "degell/conditions.hpp"

#include "degell/eigen_kernel.hpp"
#include "degell/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace degell {

namespace {

int infer_dimension(const OperatorSpec& op, const HamiltonianSpec& ham) {
    if (const auto* w = std::get_if<op::WeightedEigenvalues>(&op.kind())) return static_cast<int>(w->alpha.size());
    if (const auto* a = std::get_if<ham::AnisotropicPower>(&ham.kind())) return static_cast<int>(a->A.rows());
    if (const auto* l = std::get_if<op::LinearDegenerate>(&op.kind()))
        return static_cast<int>(l->sigma(Point::Zero(3)).rows());
    return 3;
}

class Sampler {
public:
    Sampler(std::uint64_t seed, int n) : rng_(seed), n_(n) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    SymMatrix symmetric() {
        SymMatrix X(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) X(i, j) = uniform(-1.0, 1.0);
        return 0.5 * (X + X.transpose());
    }

    SymMatrix positive() {
        SymMatrix V(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) V(i, j) = uniform(-1.0, 1.0);
        Vector d(n_);
        for (int i = 0; i < n_; ++i) d(i) = uniform(0.0, 1.0);
        SymMatrix Y = V.transpose() * d.asDiagonal() * V;
        return 0.5 * (Y + Y.transpose());
    }

    Vector vector(double radius) {
        Vector v(n_);
        for (int i = 0; i < n_; ++i) v(i) = uniform(-radius, radius);
        return v;
    }

private:
    std::mt19937_64 rng_;
    int n_;
};

void record(ConditionResult& result, double margin) { result.worst_margin = std::max(result.worst_margin, margin); }

} // namespace

bool ConditionReport::passed() const {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return !r.required || r.passed; });
}

bool ConditionReport::has(const std::string& name) const {
    return std::any_of(results.begin(), results.end(), [&](const auto& r) { return r.name == name; });
}

const ConditionResult& ConditionReport::get(const std::string& name) const {
    for (const auto& r : results)
        if (r.name == name) return r;
    throw InvalidInput("ConditionReport: no condition named " + name);
}

std::string ConditionReport::to_text() const {
    std::string out = fmt::format("samples = {}\ndimension = {}\n", samples, dimension);
    for (const auto& r : results) {
        out += fmt::format("{} = {} worst_margin={:.6e}{}{}\n", r.name, r.passed ? "pass" : "FAIL", r.worst_margin,
                           r.required ? "" : " (diagnostic)", r.note.empty() ? "" : " note=" + r.note);
    }
    out += "CC = assumed\n";
    return out;
}

ConditionReport check_structural_conditions(const OperatorSpec& op, const HamiltonianSpec& ham,
                                            const Params& params, int sample_count, std::uint64_t seed,
                                            int dimension) {
    if (sample_count < 1) throw InvalidInput("check_structural_conditions: sample_count must be >= 1");
    params.validate();
    const int n = dimension > 0 ? dimension : infer_dimension(op, ham);
    const bool cone = op.is<op::MongeAmpere>();
    const double beta = params.beta;
    const double b = params.b;
    const double c = params.c;
    const double p = params.p;

    auto named = [](const char* name) {
        ConditionResult r;
        r.name = name;
        return r;
    };
    ConditionResult f1 = named("F1"), deg2 = named("deg2"), f2 = named("F2"), deg2neg = named("deg2_negative_Y");
    deg2neg.required = false;
    if (cone) deg2neg.note = "not applicable on the convex cone";

    ConditionResult h_main = named(p > 1.0 ? "H1" : "H2_scaling");
    ConditionResult h_aux = named(p > 1.0 ? "H_lower" : "H2_bounds");

    Sampler s(seed, n);
    const SymMatrix I = SymMatrix::Identity(n, n);
    const SymMatrix Z = SymMatrix::Zero(n, n);
    double xi_radius = 2.0;
    if (const auto* cp = std::get_if<ham::CompactPerturbation>(&ham.kind()))
        xi_radius = std::max(xi_radius, 2.0 * cp->R);

    for (int k = 0; k < sample_count; ++k) {
        const Point x = s.vector(1.0);
        // the first sample is the canonical witness X = 0, Y = +-I
        SymMatrix X = k == 0 ? Z : (cone ? s.positive() : s.symmetric());
        const SymMatrix Yp = k == 0 ? I : s.positive();
        const SymMatrix Yn = k == 0 ? SymMatrix(-I) : SymMatrix(-s.positive());

        const double fx = evaluate_operator(op, x, X);
        {
            const double lo = eigenvalues_sorted(Yp)(0);
            record(deg2, beta * lo - (evaluate_operator(op, x, X + Yp) - fx));
        }
        if (cone) {
            // Y <= 0 with X + Y >= 0: write X = W + P, Y = -P
            const SymMatrix W = X + Yp;
            const double hi = eigenvalues_sorted(SymMatrix(-Yp))(n - 1);
            record(f1, evaluate_operator(op, x, X) - evaluate_operator(op, x, W) - beta * hi);
        } else {
            const Vector ly = eigenvalues_sorted(Yn);
            const double drop = evaluate_operator(op, x, X + Yn) - fx;
            record(f1, drop - beta * ly(n - 1));
            record(deg2neg, beta * ly(0) - drop);
        }
        for (double sigma : {0.5, 2.0, 10.0, s.uniform(0.0, 10.0)}) {
            const double lhs = evaluate_operator(op, x, sigma * X);
            record(f2, std::abs(lhs - sigma * fx) / (1.0 + std::abs(sigma * fx)));
        }

        const Vector xi = k == 0 ? Vector::Zero(n) : s.vector(xi_radius);
        const Vector eta = s.vector(xi_radius);
        const double h_xi = evaluate_hamiltonian(ham, xi);
        if (p > 1.0) {
            for (double sigma : {0.0, 1.0, s.uniform(0.0, 1.0)}) {
                const double lhs = evaluate_hamiltonian(ham, sigma * eta + (1.0 - sigma) * xi) -
                                   sigma * evaluate_hamiltonian(ham, eta);
                record(h_main, lhs - (1.0 - sigma) * (b * std::pow(xi.norm(), p) + c));
            }
            record(h_aux, -params.d - h_xi);
        } else {
            for (double eps : {0.5, s.uniform(0.0, 1.0)}) {
                record(h_main, eps * h_xi - evaluate_hamiltonian(ham, eps * xi));
            }
            record(h_aux, -h_xi);
            record(h_aux, h_xi - b * std::pow(xi.norm(), p) - c);
        }
    }
    ConditionReport report;
    report.samples = sample_count;
    report.dimension = n;
    for (ConditionResult* r : {&f1, &deg2, &f2, &deg2neg, &h_main, &h_aux}) {
        r->passed = r->worst_margin <= kConditionTolerance;
        if (r == &deg2neg && cone) r->passed = true;
        report.results.push_back(*r);
    }
    return report;
}

} // namespace degell
