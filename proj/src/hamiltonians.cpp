#include "degell/hamiltonians.hpp"

#include "degell/eigen_kernel.hpp"
#include "degell/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace degell {

namespace {

void validate_exponent(double p) {
    if (!std::isfinite(p) || p <= 0.0) throw InvalidInput(fmt::format("hamiltonian: p must be > 0 (got {})", p));
}

void validate_kind(const HamiltonianSpec::Kind& kind) {
    if (const auto* h = std::get_if<ham::PowerNorm>(&kind)) {
        validate_exponent(h->p);
        if (!std::isfinite(h->b) || h->b <= 0.0) throw InvalidInput("PowerNorm: b must be > 0");
        return;
    }
    if (const auto* h = std::get_if<ham::AnisotropicPower>(&kind)) {
        validate_exponent(h->p);
        if (!std::isfinite(h->b) || h->b <= 0.0) throw InvalidInput("AnisotropicPower: b must be > 0");
        const Vector lambda = eigenvalues_sorted(h->A);
        const double cap = std::pow(h->b, 2.0 / h->p);
        const double slack = 1e-12 * std::max(1.0, cap);
        if (lambda(0) < -slack) throw InvalidInput("AnisotropicPower: A must be positive semidefinite");
        if (lambda(lambda.size() - 1) > cap + slack)
            throw InvalidInput(fmt::format("AnisotropicPower: lambda_N(A) = {} exceeds b^(2/p) = {}",
                                           lambda(lambda.size() - 1), cap));
        return;
    }
    const auto& h = std::get<ham::CompactPerturbation>(kind);
    validate_exponent(h.p);
    if (h.p <= 1.0) throw InvalidInput("CompactPerturbation: requires p > 1");
    if (!h.bump) throw InvalidInput("CompactPerturbation: missing bump");
    const PerturbationConstant expected = compact_perturbation_constant(h.p, h.norms);
    if (std::abs(expected.c - h.c) > 1e-12 * std::max(1.0, expected.c) || h.R < h.norms.support_radius)
        throw InvalidInput("CompactPerturbation: stored (R, c) inconsistent with the bump norms");
}

} // namespace

HamiltonianSpec::HamiltonianSpec(Kind kind) : kind_(std::move(kind)) { validate_kind(kind_); }

std::string HamiltonianSpec::name() const {
    if (is<ham::PowerNorm>()) return "PowerNorm";
    if (is<ham::AnisotropicPower>()) return "AnisotropicPower";
    return "CompactPerturbation";
}

double HamiltonianSpec::exponent() const {
    return std::visit([](const auto& h) { return h.p; }, kind_);
}

double HamiltonianSpec::growth_coefficient() const {
    if (const auto* h = std::get_if<ham::PowerNorm>(&kind_)) return h->b;
    if (const auto* h = std::get_if<ham::AnisotropicPower>(&kind_)) return h->b;
    return 1.0;
}

double HamiltonianSpec::growth_offset() const {
    if (const auto* h = std::get_if<ham::CompactPerturbation>(&kind_)) return h->c;
    return 0.0;
}

double evaluate_hamiltonian(const HamiltonianSpec& spec, const Vector& xi) {
    if (!xi.allFinite()) throw InvalidInput("evaluate_hamiltonian: non-finite gradient");
    if (const auto* h = std::get_if<ham::PowerNorm>(&spec.kind())) {
        const double norm = xi.norm();
        if (h->p == 2.0) return h->b * norm * norm;
        return h->b * std::pow(norm, h->p);
    }
    if (const auto* h = std::get_if<ham::AnisotropicPower>(&spec.kind())) {
        if (h->A.rows() != xi.size()) throw InvalidInput("AnisotropicPower: dimension mismatch");
        const double q = std::max(xi.dot(symmetrize_upper(h->A) * xi), 0.0);
        return std::pow(q, 0.5 * h->p);
    }
    const auto& h = spec.as<ham::CompactPerturbation>();
    return std::pow(xi.norm(), h.p) + h.bump(xi);
}

PerturbationConstant compact_perturbation_constant(double p, const BumpNorms& norms) {
    if (!(p > 1.0) || !std::isfinite(p)) throw InvalidInput("compact_perturbation_constant: requires p > 1");
    if (!std::isfinite(norms.sup) || !std::isfinite(norms.grad_sup) || !std::isfinite(norms.support_radius))
        throw InvalidInput("compact_perturbation_constant: non-finite norms");
    if (norms.support_radius <= 0.0) throw InvalidInput("compact_perturbation_constant: R_phi must be > 0");
    if (norms.sup < 0.0 || norms.grad_sup < 0.0) throw InvalidInput("compact_perturbation_constant: norms must be >= 0");

    // sup over the closed R-ball of |xi|^p + phi is at most max(R^p, R_phi^p + ||phi||).
    const double target = std::pow(norms.support_radius, p) + norms.sup;
    const auto gap = [&](double r) { return std::pow(r, p) - target; };
    double lo = norms.support_radius;
    double hi = lo;
    while (gap(hi) < 0.0) hi *= 2.0;
    if (gap(lo) < 0.0) {
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (gap(mid) < 0.0 ? lo : hi) = mid;
        }
    } else {
        hi = lo;
    }
    const double R = hi;
    return {R, std::max(std::pow(R, p), 2.0 * R * norms.grad_sup + norms.sup)};
}

HamiltonianSpec make_compact_perturbation(double p, std::function<double(const Vector&)> bump,
                                          const BumpNorms& norms) {
    const PerturbationConstant k = compact_perturbation_constant(p, norms);
    return HamiltonianSpec(ham::CompactPerturbation{p, std::move(bump), norms, k.R, k.c});
}

} // namespace degell
