#pragma once

#include "degell/domain.hpp"
#include "degell/types.hpp"

#include <Eigen/Core>

#include <memory>
#include <vector>

namespace degell {

/// One side of a three-point stencil: a lattice node, or the boundary (value 0)
/// at physical distance `dist` when `index` < 0.
struct StencilArm {
    int index = -1;
    double dist = 0.0;
};

/// Arms along +v and -v for a lattice vector v.
struct StencilPair {
    StencilArm plus;
    StencilArm minus;
    bool cut() const noexcept { return plus.index < 0 || minus.index < 0; }
};

enum class NodeKind { Interior, BoundaryAdjacent };

/// Lattice h Z^2 restricted to a planar ConvexDomain. Unknowns are the lattice points of the
/// open domain; a node is boundary-adjacent when some stencil arm leaves the domain, and its
/// cut distance is the exact ray-circle exit distance.
class Grid2D {
public:
    double h() const noexcept { return h_; }
    const ConvexDomain& domain() const noexcept { return domain_; }
    int size() const noexcept { return static_cast<int>(nodes_.size()); }
    int interior_count() const noexcept { return interior_count_; }
    int boundary_adjacent_count() const noexcept { return size() - interior_count_; }

    /// Lattice stencil directions, angles close to k pi / K.
    const std::vector<Eigen::Vector2i>& directions() const noexcept { return directions_; }
    int direction_count() const noexcept { return static_cast<int>(directions_.size()); }

    Point position(int node) const;
    const Eigen::Vector2i& lattice(int node) const { return nodes_[node]; }
    NodeKind kind(int node) const { return kinds_[node]; }
    /// Node id of lattice point (i, j), or -1 when it is not an unknown.
    int find(int i, int j) const;

    /// Precomputed arms for direction k.
    const StencilPair& pair(int node, int k) const { return pairs_[static_cast<std::size_t>(node) * directions_.size() + k]; }
    /// Arms for the coordinate axes (0: x, 1: y).
    const StencilPair& axis(int node, int a) const { return axes_[2 * static_cast<std::size_t>(node) + a]; }
    /// Arms for an arbitrary nonzero lattice vector.
    StencilPair make_pair(int node, const Eigen::Vector2i& v) const;

    /// Bounding box of the lattice index range.
    Eigen::Vector2i index_min() const noexcept { return lo_; }
    Eigen::Vector2i index_max() const noexcept { return hi_; }

private:
    friend std::shared_ptr<const Grid2D> build_grid(const ConvexDomain&, double, int);
    Grid2D(const ConvexDomain& domain, double h) : h_(h), domain_(domain) {}
    StencilArm arm(int node, const Eigen::Vector2i& v) const;

    double h_;
    ConvexDomain domain_;
    std::vector<Eigen::Vector2i> directions_;
    std::vector<Eigen::Vector2i> nodes_;
    std::vector<NodeKind> kinds_;
    std::vector<StencilPair> pairs_;
    std::vector<StencilPair> axes_;
    std::vector<int> lookup_;
    Eigen::Vector2i lo_, hi_;
    int interior_count_ = 0;
};

/// Primitive lattice vectors with max-norm <= ceil(K/4) closest in angle to k pi / K, k < K.
std::vector<Eigen::Vector2i> lattice_directions(int K);

/// Throws InvalidInput for non-planar domains or K < 4, DomainError when h > R/4 or
/// the lattice has no point inside the domain.
std::shared_ptr<const Grid2D> build_grid(const ConvexDomain& domain, double h, int K = 8);

/// Values at the unknowns; the boundary value is 0.
struct GridFunction {
    std::shared_ptr<const Grid2D> grid;
    Eigen::VectorXd values;

    explicit GridFunction(std::shared_ptr<const Grid2D> g) : grid(std::move(g)), values(Eigen::VectorXd::Zero(grid->size())) {}
    GridFunction(std::shared_ptr<const Grid2D> g, Eigen::VectorXd v);

    double at(const StencilArm& a) const { return a.index < 0 ? 0.0 : values[a.index]; }
};

/// Samples u at the unknowns.
template <class F>
GridFunction sample(std::shared_ptr<const Grid2D> grid, F&& u) {
    GridFunction out(grid);
    for (int i = 0; i < grid->size(); ++i) out.values[i] = u(grid->position(i));
    return out;
}

/// Three-point second difference along a stencil pair (nonuniform at cut arms):
/// 2/(a+b) ((u+ - u0)/a - (u0 - u-)/b), approximating <D^2u e, e> for the unit direction e.
double discrete_second_difference(const GridFunction& u, int node, const StencilPair& pair);
double discrete_second_difference(const GridFunction& u, int node, int direction);

/// Centered (nonuniform near the boundary) gradient along the axes.
Eigen::Vector2d discrete_gradient(const GridFunction& u, int node);

} // namespace degell
