#include "degell/eigen_kernel.hpp"
#include "degell/errors.hpp"
#include "degell/operators.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <random>

using namespace degell;

namespace {

SymMatrix random_symmetric(std::mt19937_64& rng, int n, double scale = 3.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    SymMatrix A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) A(i, j) = A(j, i) = u(rng);
    return A;
}

} // namespace

TEST_CASE("eigenvalue kernel agrees with SelfAdjointEigenSolver for N = 2..8") {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 8; ++n) {
        for (int rep = 0; rep < 50; ++rep) {
            const SymMatrix A = random_symmetric(rng, n);
            const Vector mine = eigenvalues_sorted(A);
            const Vector ref = Eigen::SelfAdjointEigenSolver<SymMatrix>(A).eigenvalues();
            REQUIRE(mine.size() == n);
            CHECK((mine - ref).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + A.norm()));
            for (int i = 1; i < n; ++i) CHECK(mine(i) >= mine(i - 1));
        }
    }
}

TEST_CASE("spectral operators on a diagonal matrix") {
    SymMatrix X = Vector((Vector(3) << -1.0, 2.0, 5.0).finished()).asDiagonal();
    const Point x = Point::Zero(3);
    CHECK(evaluate_operator(OperatorSpec(op::LambdaK{1}), x, X) == doctest::Approx(-1.0));
    CHECK(evaluate_operator(OperatorSpec(op::LambdaK{3}), x, X) == doctest::Approx(5.0));
    CHECK(evaluate_operator(OperatorSpec(op::TruncatedLower{2}), x, X) == doctest::Approx(1.0));
    CHECK(evaluate_operator(OperatorSpec(op::TruncatedUpper{2}), x, X) == doctest::Approx(7.0));
    CHECK(evaluate_operator(OperatorSpec(op::MinMax{}), x, X) == doctest::Approx(4.0));
    CHECK(evaluate_operator(OperatorSpec(op::WeightedEigenvalues{{1.0, 0.0, 2.0}}), x, X) == doctest::Approx(9.0));
    CHECK(evaluate_operator(OperatorSpec(op::NonconvexPair{3, 1}), x, X) == doctest::Approx(4.0));
    CHECK(evaluate_operator(OperatorSpec(op::CoefficientLambdaN{ScalarField::constant(0.5)}), x, X) == doctest::Approx(2.5));
}

TEST_CASE("operators are positively 1-homogeneous") {
    std::mt19937_64 rng(5);
    const std::vector<OperatorSpec> ops{OperatorSpec(op::WeightedEigenvalues{{0.5, 1.0, 2.0}}), OperatorSpec(op::LambdaK{2}), OperatorSpec(op::TruncatedLower{2}),
                                        OperatorSpec(op::TruncatedUpper{1}), OperatorSpec(op::MinMax{}), OperatorSpec(op::NonconvexPair{2, 1})};
    for (const auto& F : ops) {
        for (int rep = 0; rep < 20; ++rep) {
            const SymMatrix X = random_symmetric(rng, 3);
            const double t = 0.1 + rep * 0.37;
            CHECK(evaluate_operator(F, Point::Zero(3), t * X) == doctest::Approx(t * evaluate_operator(F, Point::Zero(3), X)).epsilon(1e-12));
        }
    }
}

TEST_CASE("Monge-Ampere lives on the positive cone") {
    const OperatorSpec ma(op::MongeAmpere{});
    SymMatrix X = SymMatrix::Identity(2, 2);
    X(1, 1) = 4.0;
    CHECK(evaluate_operator(ma, Point::Zero(2), X) == doctest::Approx(2.0));
    X(0, 0) = -1.0;
    CHECK_THROWS_AS(evaluate_operator(ma, Point::Zero(2), X), DomainError);
}

TEST_CASE("linear operator uses Sigma^T Sigma") {
    SymMatrix S(2, 2);
    S << 1.0, 1.0, 0.0, 1.0;
    MatrixField sigma{[S](const Point&) { return S; }, 0.0, 3.0, true};
    const SymMatrix A = S.transpose() * S;
    sigma.inf_lambda_max = Eigen::SelfAdjointEigenSolver<SymMatrix>(A).eigenvalues().maxCoeff();
    const OperatorSpec L(op::LinearDegenerate{sigma});
    SymMatrix X(2, 2);
    X << 1.0, 2.0, 2.0, -3.0;
    CHECK(evaluate_operator(L, Point::Zero(2), X) == doctest::Approx((A * X).trace()));
}

TEST_CASE("ellipticity constants and invariants") {
    CHECK(ellipticity_constant(OperatorSpec(op::WeightedEigenvalues{{0.0, 2.0}})) == doctest::Approx(2.0));
    CHECK(ellipticity_constant(OperatorSpec(op::LambdaK{1})) == doctest::Approx(1.0));
    CHECK(ellipticity_constant(OperatorSpec(op::MongeAmpere{})) == doctest::Approx(1.0));
    CHECK_THROWS_AS(OperatorSpec(op::WeightedEigenvalues{{-1.0, 2.0}}), InvalidInput);
    CHECK_THROWS_AS(OperatorSpec(op::WeightedEigenvalues{{0.0, 0.0}}), InvalidInput);
    CHECK_THROWS_AS(OperatorSpec(op::LambdaK{0}), InvalidInput);
    CHECK_THROWS_AS(evaluate_operator(OperatorSpec(op::LambdaK{3}), Point::Zero(2), SymMatrix::Identity(2, 2)), InvalidInput);
}

TEST_CASE("small worked examples") {
    SymMatrix D = SymMatrix::Zero(2, 2);
    D(0, 0) = 3.0;
    D(1, 1) = -1.0;
    CHECK(eigenvalues_sorted(D).isApprox(Vector((Vector(2) << -1.0, 3.0).finished())));
    SymMatrix J(2, 2);
    J << 0.0, 1.0, 1.0, 0.0;
    CHECK(eigenvalues_sorted(J).isApprox(Vector((Vector(2) << -1.0, 1.0).finished())));
    CHECK(eigenvalues_sorted(SymMatrix::Identity(3, 3)).isApprox(Vector::Ones(3)));
    CHECK(evaluate_operator(OperatorSpec(op::MinMax{}), Point::Zero(2), D) == doctest::Approx(2.0));
    CHECK(evaluate_operator(OperatorSpec(op::LambdaK{2}), Point::Zero(2), D) == doctest::Approx(3.0));
    CHECK(evaluate_operator(OperatorSpec(op::MongeAmpere{}), Point::Zero(3), SymMatrix::Identity(3, 3)) == doctest::Approx(1.0));
}
