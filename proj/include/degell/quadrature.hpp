#pragma once

#include "degell/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <vector>

namespace degell {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long panels = 0;
};

/// Adaptive Simpson on [a, b]. A panel is accepted when the two-level difference
/// |S_left + S_right - S| / 15 <= panel_tol; panels are never split below 1e-15 relative
/// width. Throws QuadratureError naming the offending panel once max_panels is exceeded.
template <class F>
QuadratureResult adaptive_simpson(F&& f, double a, double b, double panel_tol = 1e-10,
                                  long max_panels = 1L << 20) {
    QuadratureResult out;
    if (a == b) return out;
    struct Panel {
        double a, m, b, fa, fm, fb, whole;
    };
    auto simpson = [](double a, double b, double fa, double fm, double fb) {
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    };
    const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    std::vector<Panel> stack{{a, m, b, fa, fm, fb, simpson(a, b, fa, fm, fb)}};
    const double min_width = 1e-15 * std::max(std::abs(a), std::abs(b));
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        const double lm = 0.5 * (p.a + p.m), rm = 0.5 * (p.m + p.b);
        const double flm = f(lm), frm = f(rm);
        const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
        const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
        const double diff = left + right - p.whole;
        if (!std::isfinite(diff)) {
            throw QuadratureError(fmt::format("adaptive_simpson: non-finite integrand on [{:.17g}, {:.17g}]", p.a, p.b));
        }
        if (std::abs(diff) <= 15.0 * panel_tol || (p.b - p.a) <= min_width) {
            out.value += left + right + diff / 15.0;
            out.error_estimate += std::abs(diff) / 15.0;
            if (++out.panels > max_panels) {
                throw QuadratureError(fmt::format(
                    "adaptive_simpson: panel cap {} exceeded near [{:.17g}, {:.17g}] (estimate {:.3e})",
                    max_panels, p.a, p.b, std::abs(diff) / 15.0));
            }
        } else {
            if (static_cast<long>(stack.size()) + out.panels > max_panels) {
                throw QuadratureError(fmt::format(
                    "adaptive_simpson: panel cap {} exceeded near [{:.17g}, {:.17g}] (estimate {:.3e})",
                    max_panels, p.a, p.b, std::abs(diff) / 15.0));
            }
            stack.push_back({p.m, rm, p.b, p.fm, frm, p.fb, right});
            stack.push_back({p.a, lm, p.m, p.fa, flm, p.fm, left});
        }
    }
    return out;
}

} // namespace degell
