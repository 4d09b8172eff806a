#include "degell/grid.hpp"

#include "degell/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace degell {

std::vector<Eigen::Vector2i> lattice_directions(int K) {
    if (K < 4) throw InvalidInput(fmt::format("lattice_directions: K must be >= 4 (got {})", K));
    const int m = (K + 3) / 4;
    std::vector<Eigen::Vector2i> candidates;
    for (int a = -m; a <= m; ++a) {
        for (int b = 0; b <= m; ++b) {
            if (b == 0 && a <= 0) continue; // half plane, angle in [0, pi)
            if (std::gcd(std::abs(a), b) != 1) continue;
            candidates.emplace_back(a, b);
        }
    }
    std::vector<Eigen::Vector2i> out;
    for (int k = 0; k < K; ++k) {
        const double target = k * std::numbers::pi / K;
        const Eigen::Vector2i* best = nullptr;
        double best_gap = kInf;
        for (const auto& v : candidates) {
            const double gap = std::abs(std::atan2(v(1), v(0)) - target);
            if (gap < best_gap) {
                best_gap = gap;
                best = &v;
            }
        }
        if (std::find(out.begin(), out.end(), *best) != out.end())
            throw InvalidInput(fmt::format("lattice_directions: K = {} does not resolve to distinct lattice vectors", K));
        out.push_back(*best);
    }
    return out;
}

Point Grid2D::position(int node) const {
    Point x(2);
    x << h_ * nodes_[node](0), h_ * nodes_[node](1);
    return x;
}

int Grid2D::find(int i, int j) const {
    if (i < lo_(0) || i > hi_(0) || j < lo_(1) || j > hi_(1)) return -1;
    const int nx = hi_(0) - lo_(0) + 1;
    return lookup_[static_cast<std::size_t>(j - lo_(1)) * nx + (i - lo_(0))];
}

StencilArm Grid2D::arm(int node, const Eigen::Vector2i& v) const {
    const Eigen::Vector2i t = nodes_[node] + v;
    const double length = h_ * std::hypot(v(0), v(1));
    const int id = find(t(0), t(1));
    // the domain is convex, so a segment between two unknowns stays inside
    if (id >= 0) return {id, length};
    Point dir(2);
    dir << v(0), v(1);
    dir /= dir.norm();
    const double exit = domain_.exit_distance(position(node), dir);
    return {-1, std::clamp(exit, 1e-12 * h_, length)};
}

StencilPair Grid2D::make_pair(int node, const Eigen::Vector2i& v) const {
    if (v.isZero()) throw InvalidInput("Grid2D::make_pair: zero vector");
    return {arm(node, v), arm(node, -v)};
}

std::shared_ptr<const Grid2D> build_grid(const ConvexDomain& domain, double h, int K) {
    if (domain.dimension() != 2) throw InvalidInput("build_grid: planar domains only");
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInput("build_grid: h must be > 0");
    const double R = domain.radius();
    if (h > R / 4.0) throw DomainError(fmt::format("build_grid: h = {} too coarse for R = {} (need h <= R/4)", h, R));
    auto directions = lattice_directions(K);

    std::shared_ptr<Grid2D> g(new Grid2D(domain, h));
    g->directions_ = std::move(directions);
    double lx = kInf, hx = -kInf, ly = kInf, hy = -kInf;
    for (const auto& y : domain.centers()) {
        lx = std::min(lx, y(0) - R);
        hx = std::max(hx, y(0) + R);
        ly = std::min(ly, y(1) - R);
        hy = std::max(hy, y(1) + R);
    }
    g->lo_ = {static_cast<int>(std::floor(lx / h)), static_cast<int>(std::floor(ly / h))};
    g->hi_ = {static_cast<int>(std::ceil(hx / h)), static_cast<int>(std::ceil(hy / h))};
    const int nx = g->hi_(0) - g->lo_(0) + 1;
    const int ny = g->hi_(1) - g->lo_(1) + 1;
    g->lookup_.assign(static_cast<std::size_t>(nx) * ny, -1);
    Point x(2);
    for (int j = g->lo_(1); j <= g->hi_(1); ++j) {
        for (int i = g->lo_(0); i <= g->hi_(0); ++i) {
            x << h * i, h * j;
            if (!domain.contains(x)) continue;
            g->lookup_[static_cast<std::size_t>(j - g->lo_(1)) * nx + (i - g->lo_(0))] = static_cast<int>(g->nodes_.size());
            g->nodes_.emplace_back(i, j);
        }
    }
    if (g->nodes_.empty()) throw DomainError("build_grid: no lattice point inside the domain");

    const int n = static_cast<int>(g->nodes_.size());
    const auto& dirs = g->directions_;
    g->pairs_.reserve(static_cast<std::size_t>(n) * dirs.size());
    g->axes_.reserve(2 * static_cast<std::size_t>(n));
    g->kinds_.assign(n, NodeKind::Interior);
    for (int node = 0; node < n; ++node) {
        bool cut = false;
        for (const auto& v : dirs) {
            g->pairs_.push_back(g->make_pair(node, v));
            cut = cut || g->pairs_.back().cut();
        }
        g->axes_.push_back(g->make_pair(node, {1, 0}));
        g->axes_.push_back(g->make_pair(node, {0, 1}));
        if (cut) g->kinds_[node] = NodeKind::BoundaryAdjacent;
        else ++g->interior_count_;
    }
    return g;
}

GridFunction::GridFunction(std::shared_ptr<const Grid2D> g, Eigen::VectorXd v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->size()) throw InvalidInput("GridFunction: value count does not match the grid");
}

double discrete_second_difference(const GridFunction& u, int node, const StencilPair& pair) {
    const double a = pair.plus.dist, b = pair.minus.dist;
    const double u0 = u.values[node];
    return 2.0 / (a + b) * ((u.at(pair.plus) - u0) / a - (u0 - u.at(pair.minus)) / b);
}

double discrete_second_difference(const GridFunction& u, int node, int direction) {
    return discrete_second_difference(u, node, u.grid->pair(node, direction));
}

Eigen::Vector2d discrete_gradient(const GridFunction& u, int node) {
    Eigen::Vector2d g;
    const double u0 = u.values[node];
    for (int k = 0; k < 2; ++k) {
        const StencilPair& p = u.grid->axis(node, k);
        const double a = p.plus.dist, b = p.minus.dist;
        g(k) = (b * b * u.at(p.plus) - a * a * u.at(p.minus) - (b * b - a * a) * u0) / (a * b * (a + b));
    }
    return g;
}

} // namespace degell
