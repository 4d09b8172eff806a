#include "degell/conditions.hpp"
#include "degell/config.hpp"
#include "degell/errors.hpp"
#include "degell/hamiltonians.hpp"

#include <doctest.h>

#include <cmath>

using namespace degell;

TEST_CASE("power and anisotropic Hamiltonians") {
    Vector xi(2);
    xi << 3.0, 4.0;
    CHECK(evaluate_hamiltonian(HamiltonianSpec(ham::PowerNorm{2.0, 3.0}), xi) == doctest::Approx(250.0));
    SymMatrix A = SymMatrix::Zero(2, 2);
    A(0, 0) = 1.0;
    CHECK(evaluate_hamiltonian(HamiltonianSpec(ham::AnisotropicPower{A, 2.0, 1.0}), xi) == doctest::Approx(9.0));
    CHECK_THROWS_AS(HamiltonianSpec(ham::PowerNorm{-1.0, 2.0}), InvalidInput);
}

TEST_CASE("compact perturbation constants") {
    const auto pc = compact_perturbation_constant(2.0, BumpNorms{1.0, 1.0, 1.0});
    CHECK(pc.R == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(pc.c == doctest::Approx(2.0 * std::sqrt(2.0) + 1.0).epsilon(1e-12));
    const HamiltonianSpec H = make_polynomial_bump_hamiltonian(2.0, 1.0, 1.0);
    Vector xi = Vector::Zero(2);
    CHECK(evaluate_hamiltonian(H, xi) == doctest::Approx(1.0));
    xi(0) = 2.0;
    CHECK(evaluate_hamiltonian(H, xi) == doctest::Approx(4.0));
}

TEST_CASE("structural conditions pass for the catalog with its ellipticity constant") {
    const HamiltonianSpec H(ham::PowerNorm{1.0, 2.0});
    struct Entry {
        OperatorSpec op;
        int dim;
    };
    const std::vector<Entry> entries{
        {OperatorSpec(op::WeightedEigenvalues{{0.0, 2.0}}), 2}, {OperatorSpec(op::WeightedEigenvalues{{1.0, 0.5, 2.0}}), 3},
        {OperatorSpec(op::LambdaK{1}), 3},                      {OperatorSpec(op::LambdaK{3}), 3},
        {OperatorSpec(op::TruncatedLower{2}), 3},               {OperatorSpec(op::TruncatedUpper{2}), 3},
        {OperatorSpec(op::MinMax{}), 3},                        {OperatorSpec(op::NonconvexPair{2, 1}), 3},
        {OperatorSpec(op::MongeAmpere{}), 3},
    };
    for (const auto& e : entries) {
        Params q;
        q.beta = ellipticity_constant(e.op);
        const auto rep = check_structural_conditions(e.op, H, q, 200, 3, e.dim);
        INFO(e.op.name());
        CHECK(rep.passed());
        CHECK(rep.has("H1"));
    }
}

TEST_CASE("sublinear Hamiltonian conditions") {
    Params q;
    q.p = 0.5;
    const auto rep = check_structural_conditions(OperatorSpec(op::LambdaK{1}), HamiltonianSpec(ham::PowerNorm{1.0, 0.5}), q, 200, 3, 2);
    CHECK(rep.passed());
    CHECK(rep.has("H2_scaling"));
    CHECK(rep.has("H2_bounds"));
}

TEST_CASE("conditions report an overstated beta") {
    Params q;
    q.beta = 3.0;
    const auto rep = check_structural_conditions(OperatorSpec(op::WeightedEigenvalues{{0.0, 2.0}}),
                                                 HamiltonianSpec(ham::PowerNorm{1.0, 2.0}), q, 200, 3, 2);
    CHECK_FALSE(rep.passed());
    CHECK(rep.to_text().find("CC = assumed") != std::string::npos);
}

TEST_CASE("zero bump and isotropic reduction") {
    const auto pc = compact_perturbation_constant(2.0, BumpNorms{0.0, 0.0, 1.0});
    CHECK(pc.c == doctest::Approx(1.0));
    Vector xi(2);
    xi << 3.0, 4.0;
    CHECK(evaluate_hamiltonian(HamiltonianSpec(ham::AnisotropicPower{SymMatrix::Identity(2, 2), 2.0, 1.0}), xi) == doctest::Approx(25.0));
    CHECK(evaluate_hamiltonian(HamiltonianSpec(ham::PowerNorm{1.5, 1.7}), Vector::Zero(2)) == 0.0);
}

TEST_CASE("lambda_N weight with beta = 1 passes") {
    Params q;
    const auto rep = check_structural_conditions(OperatorSpec(op::WeightedEigenvalues{{0.0, 0.0, 1.0}}),
                                                 HamiltonianSpec(ham::PowerNorm{1.0, 2.0}), q, 300, 1, 3);
    CHECK(rep.get("F1").passed);
    CHECK(rep.get("F2").passed);
    CHECK(rep.get("H1").passed);
}
