#include "degell/domain.hpp"
#include "degell/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace degell;

namespace {
Point p2(double x, double y) {
    Point p(2);
    p << x, y;
    return p;
}
} // namespace

TEST_CASE("ball and lens membership") {
    const ConvexDomain lens(1.0, {p2(0.3, 0.0), p2(-0.3, 0.0)});
    CHECK(lens.contains(p2(0.0, 0.0)));
    CHECK(lens.max_center_distance(p2(0.0, 0.0)) == doctest::Approx(0.3));
    CHECK_FALSE(lens.contains(p2(0.8, 0.0)));
    CHECK(lens.contains_closure(p2(0.7, 0.0)));
    CHECK(lens.exit_distance(p2(0.0, 0.0), p2(1.0, 0.0)) == doctest::Approx(0.7));
    CHECK(lens.exit_distance(p2(0.0, 0.0), p2(0.0, 1.0)) == doctest::Approx(std::sqrt(0.91)));
}

TEST_CASE("invalid domains") {
    CHECK_THROWS_AS(ConvexDomain(0.0, {p2(0, 0)}), InvalidInput);
    CHECK_THROWS_AS(ConvexDomain(1.0, {}), InvalidInput);
    CHECK_THROWS_AS(ConvexDomain(1.0, {p2(-1.5, 0.0), p2(1.5, 0.0)}), InvalidInput);
}

TEST_CASE("boundary samples lie on the boundary") {
    const ConvexDomain lens(1.0, {p2(0.3, 0.0), p2(-0.3, 0.0)});
    const auto pts = sample_boundary(lens, 512);
    REQUIRE(pts.size() == 512);
    for (const auto& x : pts) CHECK(std::abs(lens.max_center_distance(x) - 1.0) <= 1e-12);
    // both arcs are populated
    int right = 0;
    for (const auto& x : pts) right += x(0) > 0.0;
    CHECK(right == 256);
}
