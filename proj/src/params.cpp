#include "degell/params.hpp"

#include "degell/errors.hpp"

#include <fmt/format.h>

#include <cmath>

namespace degell {

void Params::validate() const {
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!(finite(beta) && finite(b) && finite(c) && finite(d) && finite(p) && finite(M))) {
        throw InvalidInput("params: non-finite value");
    }
    if (beta <= 0.0) throw InvalidInput(fmt::format("params: beta must be > 0 (got {})", beta));
    if (b <= 0.0) throw InvalidInput(fmt::format("params: b must be > 0 (got {})", b));
    if (c < 0.0) throw InvalidInput(fmt::format("params: c must be >= 0 (got {})", c));
    if (d < 0.0) throw InvalidInput(fmt::format("params: d must be >= 0 (got {})", d));
    if (M < 0.0) throw InvalidInput(fmt::format("params: M must be >= 0 (got {})", M));
    if (p <= 0.0) throw InvalidInput(fmt::format("params: p must be > 0 (got {})", p));
    if (std::abs(p - 1.0) < kExponentGap) {
        throw BranchError("params: p = 1 is not supported (linear gradient growth)");
    }
}

std::string Params::describe() const {
    return fmt::format("beta={:.17g} b={:.17g} c={:.17g} d={:.17g} p={:.17g} M={:.17g}", beta, b, c, d,
                       p, M);
}

} // namespace degell
