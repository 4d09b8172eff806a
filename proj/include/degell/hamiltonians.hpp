#pragma once

#include "degell/types.hpp"

#include <functional>
#include <string>
#include <variant>

namespace degell {

/// Sup-norm data of a C^1 compactly supported bump phi.
struct BumpNorms {
    double sup = 0.0;            // ||phi||_inf
    double grad_sup = 0.0;       // ||D phi||_inf
    double support_radius = 1.0; // supp(phi) inside the ball of this radius
};

namespace ham {

/// b |xi|^p.
struct PowerNorm {
    double b = 1.0;
    double p = 2.0;
};
/// <A xi, xi>^{p/2} with 0 <= A <= b^{2/p} I.
struct AnisotropicPower {
    SymMatrix A;
    double p = 2.0;
    double b = 1.0;
};
/// |xi|^p + phi(xi); R and c are derived from the bump norms.
struct CompactPerturbation {
    double p = 2.0;
    std::function<double(const Vector&)> bump;
    BumpNorms norms;
    double R = 0.0;
    double c = 0.0;
};

} // namespace ham

class HamiltonianSpec {
public:
    using Kind = std::variant<ham::PowerNorm, ham::AnisotropicPower, ham::CompactPerturbation>;

    HamiltonianSpec(Kind kind); // NOLINT(google-explicit-constructor)

    const Kind& kind() const noexcept { return kind_; }
    std::string name() const;

    template <class T>
    bool is() const noexcept {
        return std::holds_alternative<T>(kind_);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(kind_);
    }

    double exponent() const;
    /// b in the growth bound H(xi) <= b|xi|^p + c.
    double growth_coefficient() const;
    /// c in the growth bound.
    double growth_offset() const;

private:
    Kind kind_;
};

double evaluate_hamiltonian(const HamiltonianSpec& spec, const Vector& xi);

struct PerturbationConstant {
    double R = 0.0;
    double c = 0.0;
};

/// Smallest R >= R_phi with R^p >= R_phi^p + ||phi||_inf (bisection), and
/// c = max{R^p, 2 R ||D phi||_inf + ||phi||_inf}.
PerturbationConstant compact_perturbation_constant(double p, const BumpNorms& norms);

HamiltonianSpec make_compact_perturbation(double p, std::function<double(const Vector&)> bump,
                                          const BumpNorms& norms);

} // namespace degell
