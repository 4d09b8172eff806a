#include "degell/barriers.hpp"
#include "degell/closed_forms.hpp"
#include "degell/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace degell;

namespace {
Point p2(double x, double y) {
    Point p(2);
    p << x, y;
    return p;
}
Params model() {
    Params q;
    q.beta = 2.0;
    return q;
}
} // namespace

TEST_CASE("lens barriers") {
    const ConvexDomain lens(1.0, {p2(0.3, 0.0), p2(-0.3, 0.0)});
    const BarrierField super = build_supersolution(lens, model(), 1.0);
    const BarrierField sub = build_subsolution(lens, model(), 4.0);
    CHECK(evaluate_barrier(super, p2(0.0, 0.0)) == doctest::Approx(0.2840917632).epsilon(1e-8));
    CHECK(evaluate_barrier(sub, p2(0.0, 0.0)) == doctest::Approx(-0.91));
    for (const auto& x : sample_boundary(lens, 512)) {
        CHECK(std::abs(evaluate_barrier(super, x)) <= 1e-6);
        CHECK(std::abs(evaluate_barrier(sub, x)) <= 1e-6);
    }
    CHECK_THROWS_AS(evaluate_barrier(super, p2(0.9, 0.0)), DomainError);
    std::ostringstream csv;
    write_barrier_csv(csv, super, 0.25);
    CHECK(csv.str().rfind("x,y,value", 0) == 0);
}

TEST_CASE("barrier preconditions") {
    const ConvexDomain disc(1.0, {p2(0.0, 0.0)});
    CHECK_THROWS_AS(build_supersolution(disc, model(), 2.0), ThresholdViolation);
    const BarrierField zero = build_supersolution(disc, model(), 0.0);
    CHECK(evaluate_barrier(zero, p2(0.1, 0.2)) == 0.0);
    CHECK_THROWS_AS(build_subsolution(disc, model(), -1.0), InvalidInput);
}

TEST_CASE("ball barrier is the radial profile") {
    const ConvexDomain disc(1.0, {p2(0.0, 0.0)});
    const BarrierField super = build_supersolution(disc, model(), 1.0);
    for (double r : {0.0, 0.25, 0.5, 0.75}) CHECK(evaluate_barrier(super, p2(r, 0.0)) == doctest::Approx(model_u0(r)).epsilon(1e-8));
}

TEST_CASE("sub barrier examples") {
    const ConvexDomain disc(1.0, {p2(0.0, 0.0)});
    CHECK(evaluate_barrier(build_subsolution(disc, model(), 0.0), p2(0.2, 0.1)) == 0.0);
    CHECK(evaluate_barrier(build_subsolution(disc, model(), 4.0), p2(0.0, 0.0)) == doctest::Approx(-1.0));
}
