#include "degell/closed_forms.hpp"
#include "degell/errors.hpp"
#include "degell/radial.hpp"
#include "degell/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace degell;

TEST_CASE("model closed form identities") {
    CHECK(model_u0(0.5) == doctest::Approx(0.2422146874).epsilon(1e-9));
    CHECK(model_u0(0.0) == doctest::Approx(1.0 - std::log(2.0)));
    CHECK(model_u0(1.0) == doctest::Approx(0.0));
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(1e-6, 1.0);
    const RadialFunction f = model_first_zero();
    for (int k = 0; k < 10000; ++k) {
        const double r = u(rng);
        const double s0 = -f.du(r);
        REQUIRE(std::abs(2.0 * (-s0) / r + s0 * s0 + 1.0) <= 1e-10);
    }
}

TEST_CASE("second-zero closed form solves the model equation") {
    const RadialFunction u2 = model_second_zero();
    Params q;
    q.beta = 2.0;
    for (double r : {0.01, 0.2, 0.7, 0.95}) CHECK(-u2.du(r) == doctest::Approx(second_zero(r, q)).epsilon(1e-12));
    CHECK(u2.u(1.0) == doctest::Approx(0.0));
}

TEST_CASE("explicit sublinear solutions vanish on the sphere and solve their equations") {
    for (auto kind : {ExplicitKind::Lambda1, ExplicitKind::LambdaI, ExplicitKind::Laplacian, ExplicitKind::MongeAmpere}) {
        for (double p : {0.25, 0.5, 0.75}) {
            for (int N : {2, 3}) {
                const RadialFunction f = explicit_sublinear_function(kind, p, 1.0, N);
                CHECK(std::abs(f.u(1.0)) <= 1e-15);
                const auto rep = residual_check_radial(f, explicit_sublinear_problem(kind, p, N), {0.3, 0.6, 0.9}, 1e-6);
                INFO(to_string(kind) << " p=" << p << " N=" << N);
                CHECK(rep.passed);
            }
        }
    }
    CHECK_THROWS_AS(explicit_sublinear_function(ExplicitKind::LambdaI, 0.5, 1.0, 1), InvalidInput);
    CHECK(parse_explicit_kind("Laplacian") == ExplicitKind::Laplacian);
    CHECK_THROWS_AS(parse_explicit_kind("nope"), InvalidInput);
}

TEST_CASE("lambda_1 closed form coefficient") {
    // u = (1-p)^g / (2-p) (R^g - r^g), g = (2-p)/(1-p)
    const double p = 0.5, g = 3.0;
    const double C = std::pow(1.0 - p, g) / (2.0 - p);
    CHECK(explicit_sublinear_solution(ExplicitKind::Lambda1, p, 1.0, 2, 0.0) == doctest::Approx(C));
    CHECK(explicit_sublinear_solution(ExplicitKind::Lambda1, p, 2.0, 2, 1.0) == doctest::Approx(C * (8.0 - 1.0)));
}

TEST_CASE("profile wrapper") {
    Params q;
    q.beta = 2.0;
    const RadialFunction f = from_profile(radial_profile(ProfileBranch::FirstZeroSuperlinear, 0.9, q, 256));
    CHECK(f.u(0.5) == doctest::Approx(model_u0(0.5) - model_u0(0.9)).epsilon(1e-8));
    CHECK(f.du(0.5) == doctest::Approx(-first_zero(0.5, q)).epsilon(1e-12));
    CHECK(f.d2u(0.5) == doctest::Approx(model_first_zero().d2u(0.5)).epsilon(1e-9));
}
