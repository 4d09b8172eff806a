#pragma once

#include "degell/types.hpp"

#include <vector>

namespace degell {

/// Omega = intersection of the open balls B_R(y) over a finite center set.
class ConvexDomain {
public:
    /// Throws InvalidInput when R <= 0, centers are empty or of mixed
    /// dimension, or the intersection is empty.
    ConvexDomain(double radius, std::vector<Point> centers);

    double radius() const noexcept { return radius_; }
    const std::vector<Point>& centers() const noexcept { return centers_; }
    int dimension() const noexcept { return static_cast<int>(centers_.front().size()); }

    /// max_y |x - y|.
    double max_center_distance(const Point& x) const;

    /// x in Omega iff max_y |x - y| < R.
    bool contains(const Point& x) const { return max_center_distance(x) < radius_; }

    /// Closure test with relative slack: max_y |x - y| <= R (1 + slack).
    bool contains_closure(const Point& x, double slack = 1e-12) const {
        return max_center_distance(x) <= radius_ * (1.0 + slack);
    }

    /// A point of Omega found while validating nonemptiness.
    const Point& interior_point() const noexcept { return interior_; }

    /// Largest t with x + s d in the closure for all s in [0, t]; x must lie in the closure.
    double exit_distance(const Point& x, const Point& direction) const;

    ConvexDomain with_radius(double radius) const { return ConvexDomain(radius, centers_); }

private:
    double radius_;
    std::vector<Point> centers_;
    Point interior_;
};

/// Boundary points spread over the active arcs of a planar domain,
/// proportionally to arc length, equally spaced within each arc.
std::vector<Point> sample_boundary(const ConvexDomain& domain, int count);

} // namespace degell
