#include "degell/barriers.hpp"

#include "degell/errors.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <ostream>

namespace degell {

BarrierField build_supersolution(const ConvexDomain& domain, const Params& params, double M, int node_count) {
    if (!(M >= 0.0) || !std::isfinite(M)) throw InvalidInput("build_supersolution: M must be >= 0");
    const Params q = params.with_M(M);
    q.validate();
    BarrierField field{domain, BarrierKind::Super, q, M, nullptr, 0.0};
    if (M == 0.0) return field;
    const double R = domain.radius();
    if (q.superlinear()) {
        const double rb = rbar(q);
        if (R > rb * (1.0 + kEndpointTolerance)) throw ThresholdViolation(R, rb);
    }
    const auto branch = q.superlinear() ? ProfileBranch::FirstZeroSuperlinear : ProfileBranch::FirstZeroSublinear;
    field.profile = std::make_shared<const RadialProfile>(radial_profile(branch, R, q, node_count));
    return field;
}

BarrierField build_subsolution(const ConvexDomain& domain, const Params& params, double K) {
    if (!(K >= 0.0) || !std::isfinite(K)) throw InvalidInput("build_subsolution: K must be >= 0");
    params.validate();
    return BarrierField{domain, BarrierKind::Sub, params, K, nullptr, K / (2.0 * params.beta)};
}

double evaluate_barrier(const BarrierField& field, const Point& x) {
    const double dist = field.domain.max_center_distance(x);
    const double R = field.domain.radius();
    if (dist > R * (1.0 + 1e-12)) throw DomainError(fmt::format("evaluate_barrier: point at distance {} outside the closure", dist));
    const double r = std::min(dist, R);
    // both radial pieces are monotone in |x - y|, so the inf / sup is attained at the farthest center
    if (field.kind == BarrierKind::Sub) return field.coefficient * (r * r - R * R);
    if (!field.profile) return 0.0;
    return profile_u(*field.profile, r);
}

void write_barrier_csv(std::ostream& out, const BarrierField& field, double spacing) {
    if (!(spacing > 0.0)) throw InvalidInput("write_barrier_csv: spacing must be > 0");
    if (field.domain.dimension() != 2) throw InvalidInput("write_barrier_csv: planar domains only");
    const double R = field.domain.radius();
    double lo_x = kInf, hi_x = -kInf, lo_y = kInf, hi_y = -kInf;
    for (const auto& y : field.domain.centers()) {
        lo_x = std::min(lo_x, y(0) - R);
        hi_x = std::max(hi_x, y(0) + R);
        lo_y = std::min(lo_y, y(1) - R);
        hi_y = std::max(hi_y, y(1) + R);
    }
    fmt::print(out, "x,y,value\n");
    Point x(2);
    for (long j = static_cast<long>(std::ceil(lo_y / spacing)); j * spacing <= hi_y; ++j) {
        for (long i = static_cast<long>(std::ceil(lo_x / spacing)); i * spacing <= hi_x; ++i) {
            x << i * spacing, j * spacing;
            if (!field.domain.contains_closure(x)) continue;
            fmt::print(out, "{:.17g},{:.17g},{:.17g}\n", x(0), x(1), evaluate_barrier(field, x));
        }
    }
}

} // namespace degell
