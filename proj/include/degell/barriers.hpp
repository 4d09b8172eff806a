#pragma once

#include "degell/domain.hpp"
#include "degell/params.hpp"
#include "degell/radial.hpp"

#include <iosfwd>
#include <memory>

namespace degell {

enum class BarrierKind { Super, Sub };

/// u_bar = inf_y v(|x - y|) (Super) or u_under = sup_y K/(2 beta) (|x - y|^2 - R^2) (Sub).
struct BarrierField {
    ConvexDomain domain;
    BarrierKind kind = BarrierKind::Super;
    Params params;
    double norm = 0.0;                            // M (Super) or K (Sub)
    std::shared_ptr<const RadialProfile> profile; // Super with M > 0
    double coefficient = 0.0;                     // Sub: K / (2 beta)
};

/// Super barrier from the first-zero profile at M on a ball of the domain radius.
/// Throws ThresholdViolation when p > 1 and R > Rbar at this M. M = 0 gives the zero field.
BarrierField build_supersolution(const ConvexDomain& domain, const Params& params, double M, int node_count = 1024);

/// Sub barrier with K = ||(f + d)^+||_inf >= 0.
BarrierField build_subsolution(const ConvexDomain& domain, const Params& params, double K);

/// Value at x in the closure of the domain (1e-12 relative slack); DomainError outside.
double evaluate_barrier(const BarrierField& field, const Point& x);

/// Samples on the lattice spacing * Z^2 restricted to the closure: x,y,value at 17 digits.
void write_barrier_csv(std::ostream& out, const BarrierField& field, double spacing);

} // namespace degell
