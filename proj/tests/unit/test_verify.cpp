#include "degell/closed_forms.hpp"
#include "degell/errors.hpp"
#include "degell/radial.hpp"
#include "degell/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace degell;

namespace {

std::vector<Point> disc_points(double R, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rad(0.02 * R, 0.98 * R), ang(0.0, 2.0 * M_PI);
    std::vector<Point> pts;
    for (int k = 0; k < count; ++k) {
        const double r = rad(rng), t = ang(rng);
        Point x(2);
        x << r * std::cos(t), r * std::sin(t);
        pts.push_back(x);
    }
    return pts;
}

SmoothField profile_field(const Params& q, ProfileBranch b, double R) {
    return radial_field(from_profile(radial_profile(b, R, q, 512)), Point::Zero(2));
}

} // namespace

TEST_CASE("residual check of the model profile") {
    Params q;
    q.beta = 2.0;
    const PointwiseProblem pb{OperatorSpec(op::WeightedEigenvalues{{0.0, 2.0}}), HamiltonianSpec(ham::PowerNorm{1.0, 2.0}),
                              ScalarField::constant(-1.0)};
    const auto rep = residual_check_radial(model_first_zero(), pb, {0.1, 0.5, 0.9}, 1e-8);
    CHECK(rep.passed);
    CHECK(rep.max_abs <= 1e-10);
    CHECK_THROWS_AS(residual_check_radial(model_first_zero(), pb, {1.0}, 1e-8), InvalidInput);
    // wrong forcing is caught
    PointwiseProblem wrong = pb;
    wrong.f = ScalarField::constant(-2.0);
    CHECK_FALSE(residual_check_radial(model_first_zero(), wrong, {0.5}, 1e-8).passed);
}

TEST_CASE("sigma certificate") {
    Params q;
    q.beta = 2.0;
    const double eps = 0.1, sigma = 0.9, R = 0.9;
    const PointwiseProblem pb{OperatorSpec(op::WeightedEigenvalues{{0.0, 2.0}}), HamiltonianSpec(ham::PowerNorm{1.0, 2.0}),
                              ScalarField::constant(-1.0)};
    const SmoothField v = profile_field(q, ProfileBranch::FirstZeroSuperlinear, R);
    const SmoothField varphi = profile_field(q.with_M(1.0 + eps), ProfileBranch::FirstZeroSuperlinear, R);
    const auto rep = validate_sigma(pb, q, v, varphi, eps, sigma, disc_points(R, 200, 1));
    CHECK(rep.passed);
    CHECK(rep.certified_slack == doctest::Approx(0.01));
    CHECK(rep.max_chain_deviation <= 1e-10);
    CHECK(rep.min_margin >= 0.009);
    CHECK_THROWS_AS(sigma_perturbation(v, varphi, eps, 1.0), InvalidInput);
}

TEST_CASE("epsilon certificate on a sublinear profile") {
    Params q;
    q.p = 0.5;
    const PointwiseProblem pb{OperatorSpec(op::LambdaK{2}), HamiltonianSpec(ham::PowerNorm{1.0, 0.5}), ScalarField::constant(-1.0)};
    const SmoothField v = profile_field(q, ProfileBranch::FirstZeroSublinear, 1.0);
    const auto rep = validate_epsilon(pb, v, 0.1, -1.0, disc_points(1.0, 200, 2));
    CHECK(rep.passed);
    CHECK(rep.certified_slack == doctest::Approx(0.1));
    CHECK(rep.max_chain_deviation <= 1e-10);
    CHECK(rep.min_margin >= 0.099);
    CHECK_THROWS_AS(epsilon_scaling(v, 0.1, 0.5), InvalidInput);
}

TEST_CASE("threshold probe verdicts are monotone in R") {
    Params q;
    q.beta = 2.0;
    std::vector<double> Rs;
    for (int i = 1; i <= 30; ++i) Rs.push_back(0.05 * i);
    const auto v = threshold_probe(q, Rs);
    bool failed = false;
    for (const auto& t : v) {
        if (failed) CHECK_FALSE(t.exists);
        failed = failed || !t.exists;
    }
    const auto shape = threshold_probe(q, {0.99, 1.0, 1.01});
    CHECK(to_string(shape[0]) == "Exists");
    CHECK(to_string(shape[1]) == "Exists(endpoint)");
    CHECK(to_string(shape[2]).rfind("FailsAt(", 0) == 0);
    CHECK(shape[2].gap > 0.0);
    Params s;
    s.p = 0.5;
    CHECK_THROWS_AS(threshold_probe(s, {1.0}), BranchError);
}

TEST_CASE("trivial convergence study") {
    Params q;
    ConvexDomain disc(1.0, {Point::Zero(2)});
    Problem pb{OperatorSpec(op::LambdaK{2}), HamiltonianSpec(ham::PowerNorm{1.0, 2.0}), q, disc, ScalarField::constant(0.0)};
    const auto rows = convergence_study(pb, {0.25, 0.125}, [](double) { return 0.0; }, Point::Zero(2));
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) CHECK(r.error == 0.0);
}
