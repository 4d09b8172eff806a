#include "degell/domain.hpp"

#include "degell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace degell {

ConvexDomain::ConvexDomain(double radius, std::vector<Point> centers)
    : radius_(radius), centers_(std::move(centers)) {
    if (!std::isfinite(radius_) || radius_ <= 0.0) throw InvalidInput("ConvexDomain: R must be > 0");
    if (centers_.empty()) throw InvalidInput("ConvexDomain: no centers");
    const auto n = centers_.front().size();
    if (n < 1) throw InvalidInput("ConvexDomain: zero-dimensional center");
    for (const auto& y : centers_) {
        if (y.size() != n) throw InvalidInput("ConvexDomain: centers of mixed dimension");
        if (!y.allFinite()) throw InvalidInput("ConvexDomain: non-finite center");
    }

    // Badoiu-Clarkson iteration toward the minimax center; any point with
    // max distance < R certifies nonemptiness.
    Point x = Point::Zero(n);
    for (const auto& y : centers_) x += y;
    x /= static_cast<double>(centers_.size());
    for (int k = 1; k <= 200000; ++k) {
        std::size_t far = 0;
        double far_dist = -1.0;
        for (std::size_t i = 0; i < centers_.size(); ++i) {
            const double dist = (x - centers_[i]).norm();
            if (dist > far_dist) {
                far_dist = dist;
                far = i;
            }
        }
        if (far_dist < radius_) {
            interior_ = x;
            return;
        }
        x += (centers_[far] - x) / static_cast<double>(k + 1);
    }
    throw InvalidInput("ConvexDomain: the intersection of the balls is empty");
}

double ConvexDomain::max_center_distance(const Point& x) const {
    if (x.size() != centers_.front().size()) throw InvalidInput("ConvexDomain: point dimension mismatch");
    double best = 0.0;
    for (const auto& y : centers_) best = std::max(best, (x - y).norm());
    return best;
}

double ConvexDomain::exit_distance(const Point& x, const Point& direction) const {
    const double a = direction.squaredNorm();
    if (a == 0.0) throw InvalidInput("exit_distance: zero direction");
    double t = kInf;
    for (const auto& y : centers_) {
        // |x - y + t d|^2 = R^2, larger root.
        const Point w = x - y;
        const double bh = w.dot(direction);
        const double c = w.squaredNorm() - radius_ * radius_;
        const double disc = std::max(bh * bh - a * c, 0.0);
        const double root = c <= 0.0 ? (-bh + std::sqrt(disc)) / a : 0.0;
        t = std::min(t, std::max(root, 0.0));
    }
    return t;
}

std::vector<Point> sample_boundary(const ConvexDomain& domain, int count) {
    if (domain.dimension() != 2) throw InvalidInput("sample_boundary: planar domains only");
    if (count < 1) throw InvalidInput("sample_boundary: count must be >= 1");
    const double R = domain.radius();
    const auto& ys = domain.centers();
    constexpr double pi = std::numbers::pi;

    struct Arc {
        std::size_t ball;
        double start;
        double length;
    };
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        // Active arc of circle i: intersection over j of
        // {t : cos(t - angle(y_j - y_i)) >= |y_j - y_i| / (2R)}, each an arc of half width <= pi/2.
        double lo = -pi;
        double hi = pi;
        bool full = true;
        bool empty = false;
        for (std::size_t j = 0; j < ys.size() && !empty; ++j) {
            if (j == i) continue;
            const Point dvec = ys[j] - ys[i];
            const double dist = dvec.norm();
            if (dist == 0.0) continue;
            if (dist >= 2.0 * R) {
                empty = true;
                break;
            }
            const double mid = std::atan2(dvec(1), dvec(0));
            const double half = std::acos(dist / (2.0 * R));
            if (full) {
                lo = mid - half;
                hi = mid + half;
                full = false;
                continue;
            }
            // Shift the new arc to the branch closest to the current one, then intersect.
            double center = mid;
            const double current = 0.5 * (lo + hi);
            while (center - current > pi) center -= 2.0 * pi;
            while (center - current < -pi) center += 2.0 * pi;
            lo = std::max(lo, center - half);
            hi = std::min(hi, center + half);
            if (hi <= lo) empty = true;
        }
        if (!empty) arcs.push_back({i, lo, hi - lo});
    }
    // Identical centers repeat the same arc; keep the first copy.
    std::vector<Arc> unique;
    for (const auto& arc : arcs) {
        bool duplicate = false;
        for (const auto& u : unique)
            if ((ys[u.ball] - ys[arc.ball]).norm() == 0.0) duplicate = true;
        if (!duplicate) unique.push_back(arc);
    }
    double total = 0.0;
    for (const auto& arc : unique) total += arc.length;

    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(count));
    int assigned = 0;
    for (std::size_t a = 0; a < unique.size(); ++a) {
        const auto& arc = unique[a];
        int m = a + 1 == unique.size() ? count - assigned
                                        : static_cast<int>(std::lround(count * arc.length / total));
        m = std::clamp(m, 0, count - assigned);
        assigned += m;
        for (int k = 0; k < m; ++k) {
            const double t = arc.start + arc.length * (k + 0.5) / m;
            Point x(2);
            x << ys[arc.ball](0) + R * std::cos(t), ys[arc.ball](1) + R * std::sin(t);
            out.push_back(std::move(x));
        }
    }
    return out;
}

} // namespace degell
