#pragma once

#include "degell/params.hpp"
#include "degell/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace degell {

/// phi(r, s) = -beta s / r + b s^p + M; r > 0, s >= 0.
double phi(double r, double s, const Params& params);
/// d phi / d s.
double phi_s(double r, double s, const Params& params);

/// Stationary point of s -> phi(r, s) on (0, inf).
double critical_s1(double r, const Params& params);

/// Existence threshold for p > 1; +inf when M = 0.
double rbar(const Params& params);

/// Report of one root solve.
struct RootInfo {
    double value = 0.0;
    double residual = 0.0; // phi(r, value)
    bool endpoint = false; // double root at s1 (r = Rbar up to rounding)
    int bisections = 0;
    int newton_steps = 0;
};

/// First zero of phi(r, .): in (0, s1] for p > 1, in (s1, inf) for p < 1.
/// Throws NoRootError when p > 1 and phi(r, s1(r)) > 0.
RootInfo first_zero_info(double r, const Params& params);
double first_zero(double r, const Params& params);

/// Second zero of phi(r, .) in [s1, p^{1/(p-1)} s1) for p > 1.
RootInfo second_zero_info(double r, const Params& params);
double second_zero(double r, const Params& params);

enum class ProfileBranch { FirstZeroSuperlinear, SecondZeroSuperlinear, FirstZeroSublinear, ZeroM };

std::string to_string(ProfileBranch branch);
ProfileBranch parse_branch(const std::string& name);

struct ProfileOptions {
    /// Inner truncation radius for SecondZero / ZeroM profiles (relative to R when <= 0: 1e-6 R).
    double r_min = 0.0;
    double panel_tol = 1e-10;
    long max_panels = 1L << 20;
};

/// Tabulated radial solution u(|x|) on the ball of radius R with u(R) = 0.
struct RadialProfile {
    Params params;
    double R = 0.0;
    ProfileBranch branch = ProfileBranch::FirstZeroSuperlinear;
    bool endpoint = false; // R = Rbar
    std::vector<double> r_grid;
    std::vector<double> s_values;
    std::vector<double> u_values;
    std::vector<double> residuals;
    double u_at_zero = 0.0; // +inf for singular profiles
    long panels = 0;
};

/// ZeroM is the M = 0 explicit second-zero profile; the first-zero branches with M = 0
/// use the closed forms s = 0 (p > 1) and s = (b r / beta)^{1/(1-p)} (p < 1).
RadialProfile radial_profile(ProfileBranch branch, double R, const Params& params, int node_count,
                             const ProfileOptions& options = {});

/// s(r) on the profile's branch by a direct root solve; r in (0, R].
double profile_s(const RadialProfile& profile, double r);
/// Interpolated u(r): monotone cubic Hermite with the exact slopes -s at the nodes.
double profile_u(const RadialProfile& profile, double r);
/// u'(r) = -s(r).
double profile_du(const RadialProfile& profile, double r);
/// u''(r) = -s'(r), s' from the implicit function theorem on phi(r, s(r)) = 0.
double profile_d2u(const RadialProfile& profile, double r);

/// Reference value of u(r) by direct quadrature of s over [r, R] (no interpolation).
double profile_u_direct(const RadialProfile& profile, double r, double panel_tol = 1e-12);

/// CSV: a comment header naming branch and params, then r,s,u,residual at 17 digits.
void write_profile_csv(std::ostream& out, const RadialProfile& profile);

struct BlowupClass {
    bool blowup = false;
    double bound = kInf; // sup-norm bound when bounded
};

/// p in (1, 2]: blow-up at the origin; p > 2: bounded with the explicit bound.
BlowupClass classify_blowup(const Params& params);

/// C^1 bound of the first-zero profile (Rbar-based for p > 1, explicit for p < 1).
double c1_bound(const Params& params, double R);

/// Relative tolerance for treating R as the threshold radius.
inline constexpr double kEndpointTolerance = 1e-12;

} // namespace degell
