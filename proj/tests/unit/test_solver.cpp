#include "degell/closed_forms.hpp"
#include "degell/errors.hpp"
#include "degell/grid.hpp"
#include "degell/solver.hpp"
#include "degell/verify.hpp"

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
const ConvexDomain disc(1.0, {p2(0.0, 0.0)});

Problem model_problem(double f = -1.0) {
    Params q;
    q.beta = 2.0;
    return Problem{OperatorSpec(op::WeightedEigenvalues{{0.0, 2.0}}), HamiltonianSpec(ham::PowerNorm{1.0, 2.0}), q, disc,
                   ScalarField::constant(f)};
}
} // namespace

TEST_CASE("f = c gives the zero solution") {
    Problem pb = model_problem(0.0);
    const auto g = build_grid(disc, 1.0 / 8.0, 8);
    const auto res = solve(pb, g);
    CHECK(res.report.iterations == 0);
    CHECK(res.u.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("model solve is close to the closed form and inside the barrier") {
    const Problem pb = model_problem();
    const auto g = build_grid(disc, 1.0 / 16.0, 8);
    SolveControls c;
    c.init = InitialGuess::Barrier;
    const auto res = solve(pb, g, c);
    CHECK(res.report.residual_norm <= 1e-8 * 2.0);
    double err = 0.0;
    for (int i = 0; i < g->size(); ++i) err = std::max(err, std::abs(res.u.values[i] - model_u0(g->position(i).norm())));
    CHECK(err <= 0.02);
    CHECK(residual_norm(pb, res.u) == doctest::Approx(res.report.residual_norm));
    std::ostringstream csv, rep;
    write_solution_csv(csv, res.u);
    write_solve_report(rep, res.report, false);
    CHECK(rep.str().find("wall_seconds") == std::string::npos);
}

TEST_CASE("solutions are deterministic across thread counts") {
    const Problem pb = model_problem();
    const auto g = build_grid(disc, 1.0 / 8.0, 8);
    SolveControls c;
    const auto one = solve(pb, g, c);
    c.threads = 3;
    const auto three = solve(pb, g, c);
    CHECK(one.report.iterations == three.report.iterations);
    CHECK((one.u.values - three.u.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scheme is monotone in the forcing") {
    const auto g = build_grid(disc, 1.0 / 8.0, 8);
    const auto a = solve(model_problem(-1.0), g);
    const auto b = solve(model_problem(-0.5), g);
    CHECK((a.u.values - b.u.values).minCoeff() >= -1e-7);
}

TEST_CASE("solver controls and failures") {
    const Problem pb = model_problem();
    const auto g = build_grid(disc, 1.0 / 8.0, 8);
    SolveControls c;
    c.tau = 1.0;
    CHECK_THROWS_AS(solve(pb, g, c), InvalidInput);
    c.tau = 0.0;
    c.max_iter = 5;
    CHECK_THROWS_AS(solve(pb, g, c), NonConvergence);
    CHECK(stable_tau(pb.op, 0.125) == doctest::Approx(0.125 * 0.125 / 8.0));
    Problem big = pb;
    big.f = ScalarField::constant(-4.0);
    CHECK_THROWS_AS(solve(big, g), ThresholdViolation);
    Problem ma = pb;
    ma.op = OperatorSpec(op::MongeAmpere{});
    CHECK_THROWS_AS(solve(ma, g), UnsupportedDiscretization);
}

TEST_CASE("Selling decomposition reproduces the matrix") {
    for (const Eigen::Matrix2d& A : {Eigen::Matrix2d{{2.0, 0.5}, {0.5, 1.0}}, Eigen::Matrix2d{{1.0, -0.9}, {-0.9, 1.0}},
                                     Eigen::Matrix2d{{3.0, 0.0}, {0.0, 0.2}}}) {
        Eigen::Matrix2d sum = Eigen::Matrix2d::Zero();
        for (const auto& t : selling_decomposition(A)) {
            CHECK(t.weight >= 0.0);
            const Eigen::Vector2d e = t.e.cast<double>();
            sum += t.weight * e * e.transpose();
        }
        CHECK((sum - A).norm() <= 1e-12);
    }
}

TEST_CASE("linear degenerate operator solves the Poisson-type problem") {
    SymMatrix S = SymMatrix::Identity(2, 2);
    MatrixField sigma{[S](const Point&) { return S; }, 1.0, 2.0, true};
    Params q;
    Problem pb{OperatorSpec(op::LinearDegenerate{sigma}), HamiltonianSpec(ham::PowerNorm{1.0, 2.0}), q, disc,
               ScalarField::constant(-0.2)};
    const auto g = build_grid(disc, 1.0 / 8.0, 8);
    const auto res = solve(pb, g);
    CHECK(res.u.values.minCoeff() > 0.0);
}

TEST_CASE("sublinear lambda_1 benchmark converges to the closed form") {
    const double p = 0.5;
    Params q;
    q.p = p;
    q.M = 0.0;
    const Problem pb{OperatorSpec(op::LambdaK{1}), HamiltonianSpec(ham::PowerNorm{1.0, p}), q, disc, ScalarField::constant(0.0)};
    const RadialFunction exact = explicit_sublinear_function(ExplicitKind::Lambda1, p, 1.0, 2);
    SolveControls c;
    c.init = InitialGuess::Field;
    // zero is a solution too; start above the closed form
    auto from_above = [&](const Grid2D& g) {
        Eigen::VectorXd v(g.size());
        for (int i = 0; i < g.size(); ++i) v[i] = 2.0 * exact.u(g.position(i).norm());
        return v;
    };
    const auto rows = convergence_study(pb, {1.0 / 8.0, 1.0 / 16.0}, exact.u, Point::Zero(2), 8, c, from_above);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].error < rows[0].error);
    CHECK(rows[1].error <= 0.02);
}

TEST_CASE("discrete lambda_N of a concave radial profile is close to u'/r") {
    const auto g = build_grid(disc, 1.0 / 32.0, 8);
    const RadialFunction u0 = model_first_zero();
    const GridFunction u = sample(g, [&](const Point& x) { return u0.u(x.norm()); });
    const int n = g->find(8, 0); // r = 0.25
    const double lam_n = discrete_operator(OperatorSpec(op::LambdaK{2}), u, n);
    CHECK(lam_n == doctest::Approx(u0.du(0.25) / 0.25).epsilon(0.02));
}

TEST_CASE("residual of the injected radial oracle decreases under refinement") {
    // On the x axis the radial and tangential eigenvectors are stencil directions, so only the
    // O(h^2) consistency error remains; off-axis nodes carry the fixed angular error of K = 8.
    const Problem pb = model_problem();
    double prev = 1e300;
    for (double h : {1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0}) {
        const auto g = build_grid(disc, h, 8);
        const GridFunction u = sample(g, [](const Point& x) { return model_u0(x.norm()); });
        double worst = 0.0;
        for (int i = 1; i * h <= 0.7; ++i) {
            const int n = g->find(i, 0);
            const double r = discrete_operator(pb.op, u, n) + discrete_hamiltonian(pb.ham, u, n) + 1.0;
            worst = std::max(worst, std::abs(r));
        }
        CHECK(worst < prev);
        prev = worst;
    }
    const GridFunction zero(build_grid(disc, 0.125, 8));
    CHECK(residual_norm(model_problem(0.0), zero) == 0.0);
}
