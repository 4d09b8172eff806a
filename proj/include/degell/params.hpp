#pragma once

#include <string>

namespace degell {

/// Scalar problem data shared by every construction.
///
/// beta is the ellipticity constant of F, b/c/d/p describe the growth of H,
/// M is the magnitude of the (negative part of the) right hand side.
struct Params {
    double beta = 1.0;
    double b = 1.0;
    double c = 0.0;
    double d = 0.0;
    double p = 2.0;
    double M = 1.0;

    bool superlinear() const noexcept { return p > 1.0; }
    bool sublinear() const noexcept { return p < 1.0; }

    /// Throws InvalidInput when an invariant fails.
    void validate() const;

    Params with_M(double m) const {
        Params out = *this;
        out.M = m;
        return out;
    }

    std::string describe() const;

    friend bool operator==(const Params&, const Params&) = default;
};

/// |p - 1| below this is rejected: the threshold and s1 formulas are singular at p = 1.
inline constexpr double kExponentGap = 1e-6;

} // namespace degell
