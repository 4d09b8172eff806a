#pragma once

#include "degell/types.hpp"

#include <string>
#include <variant>
#include <vector>

namespace degell {

class OperatorSpec;

/// Catalog of principal parts F(x, X). Eigenvalue indices are 1-based.
namespace op {

/// sum_i alpha_i lambda_i(X), alpha_i >= 0, sum alpha_i > 0.
struct WeightedEigenvalues {
    std::vector<double> alpha;
};
/// lambda_k(X).
struct LambdaK {
    int index = 1;
};
/// lambda_1 + ... + lambda_k.
struct TruncatedLower {
    int k = 1;
};
/// lambda_{N-k+1} + ... + lambda_N.
struct TruncatedUpper {
    int k = 1;
};
/// lambda_1 + lambda_N.
struct MinMax {};
/// lambda_i(X) - (lambda_j(X))^-.
struct NonconvexPair {
    int i = 1;
    int j = 1;
};
/// Tr(Sigma^T(x) Sigma(x) X).
struct LinearDegenerate {
    MatrixField sigma;
};
/// a(x) lambda_N(X).
struct CoefficientLambdaN {
    ScalarField a;
};
/// det(X)^{1/N}, defined on X >= 0 only.
struct MongeAmpere {};
/// max_a min_b F_{a,b}: outer vector over a, inner over b.
struct SupInf {
    std::vector<std::vector<OperatorSpec>> table;
};

} // namespace op

class OperatorSpec {
public:
    using Kind = std::variant<op::WeightedEigenvalues, op::LambdaK, op::TruncatedLower, op::TruncatedUpper,
                              op::MinMax, op::NonconvexPair, op::LinearDegenerate, op::CoefficientLambdaN,
                              op::MongeAmpere, op::SupInf>;

    /// Validates the catalog invariants; throws InvalidInput.
    OperatorSpec(Kind kind); // NOLINT(google-explicit-constructor)

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

private:
    Kind kind_;
};

/// Monge-Ampere accepts lambda_1 >= -kMongeAmpereSlack and clamps to zero.
inline constexpr double kMongeAmpereSlack = 1e-10;

/// F(x, X). X is read through its upper triangle.
double evaluate_operator(const OperatorSpec& spec, const Point& x, const SymMatrix& X);

/// F for operators that depend on the spectrum only; lambda sorted ascending.
/// Throws InvalidInput for x-dependent kinds.
double evaluate_spectral(const OperatorSpec& spec, const Vector& lambda);

bool is_spectral(const OperatorSpec& spec);

/// Largest beta for which F(x,X+Y) - F(x,X) >= beta lambda_1(Y), Y >= 0, holds for the catalog entry.
double ellipticity_constant(const OperatorSpec& spec);

/// Upper bound on sum of |weights| that F places on directional second derivatives;
/// sets the pseudo-time step of the grid solver.
double hessian_weight(const OperatorSpec& spec);

} // namespace degell
