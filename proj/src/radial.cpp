#include "degell/radial.hpp"

#include "degell/errors.hpp"
#include "degell/quadrature.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <ostream>

namespace degell {

namespace {

constexpr double kRootWidth = 1e-13;
constexpr int kNewtonSteps = 5;
constexpr double kDoubleRootSlack = 1e-12;

void check_radius(double r, const char* who) {
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError(fmt::format("{}: r must be > 0 (got {})", who, r));
}

double phi_scale(double r, double s, const Params& q) { return q.M + q.beta * s / r + q.b * std::pow(s, q.p); }

/// Bisection on [lo, hi] with phi(lo) > 0 > phi(hi) (decreasing) or the reverse, then safeguarded Newton.
/// The orientation comes from the branch: near a bracket end phi can be pure rounding noise.
RootInfo bracketed_root(double r, double lo, double hi, const Params& q, bool decreasing) {
    RootInfo info;
    const bool positive_at_lo = decreasing;
    while (hi - lo > kRootWidth * std::max(hi, 1e-300)) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double v = phi(r, mid, q);
        if (v == 0.0) {
            lo = hi = mid;
            break;
        }
        if ((v > 0.0) == positive_at_lo) lo = mid;
        else hi = mid;
        ++info.bisections;
    }
    double s = 0.5 * (lo + hi);
    double v = phi(r, s, q);
    for (int k = 0; k < kNewtonSteps && v != 0.0; ++k) {
        const double slope = phi_s(r, s, q);
        if (slope == 0.0 || !std::isfinite(slope)) break;
        const double next = s - v / slope;
        if (!(next >= lo && next <= hi)) break;
        const double nv = phi(r, next, q);
        if (std::abs(nv) >= std::abs(v)) break;
        s = next;
        v = nv;
        ++info.newton_steps;
    }
    info.value = s;
    info.residual = v;
    return info;
}

RootInfo exact_root(double value, double r, const Params& q) {
    RootInfo info;
    info.value = value;
    info.residual = phi(r, value, q);
    return info;
}

} // namespace

double phi(double r, double s, const Params& q) {
    check_radius(r, "phi");
    if (!(s >= 0.0)) throw DomainError(fmt::format("phi: s must be >= 0 (got {})", s));
    return -q.beta * s / r + q.b * std::pow(s, q.p) + q.M;
}

double phi_s(double r, double s, const Params& q) {
    check_radius(r, "phi_s");
    return -q.beta / r + q.b * q.p * std::pow(s, q.p - 1.0);
}

double critical_s1(double r, const Params& q) {
    check_radius(r, "critical_s1");
    q.validate();
    if (q.superlinear()) return std::pow(q.beta / (r * q.p * q.b), 1.0 / (q.p - 1.0));
    return std::pow(q.b * q.p * r / q.beta, 1.0 / (1.0 - q.p));
}

double rbar(const Params& q) {
    q.validate();
    if (!q.superlinear()) throw BranchError("rbar: the sublinear case (p < 1) has no threshold radius");
    if (q.M == 0.0) return kInf;
    return q.beta * std::pow(q.p - 1.0, (q.p - 1.0) / q.p) /
           (q.p * std::pow(q.b, 1.0 / q.p) * std::pow(q.M, (q.p - 1.0) / q.p));
}

RootInfo first_zero_info(double r, const Params& q) {
    check_radius(r, "first_zero");
    q.validate();
    if (q.superlinear()) {
        if (q.M == 0.0) return exact_root(0.0, r, q);
        const double s1 = critical_s1(r, q);
        const double gap = phi(r, s1, q);
        if (gap >= 0.0) {
            if (gap <= kDoubleRootSlack * phi_scale(r, s1, q)) {
                RootInfo info = exact_root(s1, r, q);
                info.endpoint = true;
                return info;
            }
            throw NoRootError(r, gap);
        }
        // phi >= M - beta s / r puts the root above M r / beta
        const double lo = std::min(q.M * r / q.beta, s1);
        double hi = std::min(2.0 * lo, s1);
        while (hi < s1 && phi(r, hi, q) > 0.0) hi = std::min(2.0 * hi, s1);
        double start = hi == s1 ? lo : 0.5 * hi;
        return bracketed_root(r, std::max(start, lo), hi, q, true);
    }
    if (q.M == 0.0) return exact_root(std::pow(q.b * r / q.beta, 1.0 / (1.0 - q.p)), r, q);
    const double lo = std::max(critical_s1(r, q), q.M * r / q.beta);
    double hi = 2.0 * lo;
    while (phi(r, hi, q) >= 0.0) {
        hi *= 2.0;
        if (!std::isfinite(hi)) throw DomainError("first_zero: bracket overflow");
    }
    return bracketed_root(r, std::max(lo, 0.5 * hi), hi, q, true);
}

double first_zero(double r, const Params& q) { return first_zero_info(r, q).value; }

RootInfo second_zero_info(double r, const Params& q) {
    check_radius(r, "second_zero");
    q.validate();
    if (!q.superlinear()) throw BranchError("second_zero: requires p > 1");
    if (q.M == 0.0) return exact_root(std::pow(q.beta / (q.b * r), 1.0 / (q.p - 1.0)), r, q);
    const double s1 = critical_s1(r, q);
    const double gap = phi(r, s1, q);
    if (gap >= 0.0) {
        if (gap <= kDoubleRootSlack * phi_scale(r, s1, q)) {
            RootInfo info = exact_root(s1, r, q);
            info.endpoint = true;
            return info;
        }
        throw NoRootError(r, gap);
    }
    // phi(r, p^{1/(p-1)} s1) = M > 0 for every p > 1
    const double hi = std::pow(q.p, 1.0 / (q.p - 1.0)) * s1;
    return bracketed_root(r, s1, hi, q, false);
}

double second_zero(double r, const Params& q) { return second_zero_info(r, q).value; }

std::string to_string(ProfileBranch branch) {
    switch (branch) {
    case ProfileBranch::FirstZeroSuperlinear: return "FirstZeroSuperlinear";
    case ProfileBranch::SecondZeroSuperlinear: return "SecondZeroSuperlinear";
    case ProfileBranch::FirstZeroSublinear: return "FirstZeroSublinear";
    case ProfileBranch::ZeroM: return "ZeroM";
    }
    return "?";
}

ProfileBranch parse_branch(const std::string& name) {
    for (auto b : {ProfileBranch::FirstZeroSuperlinear, ProfileBranch::SecondZeroSuperlinear,
                   ProfileBranch::FirstZeroSublinear, ProfileBranch::ZeroM}) {
        if (to_string(b) == name) return b;
    }
    throw InvalidInput("unknown profile branch: " + name);
}

namespace {

bool first_zero_branch(ProfileBranch b) {
    return b == ProfileBranch::FirstZeroSuperlinear || b == ProfileBranch::FirstZeroSublinear;
}

/// s on the branch; r = 0 is allowed for first-zero branches (s(0) = 0).
double branch_s(ProfileBranch branch, double r, const Params& q) {
    if (first_zero_branch(branch)) return r == 0.0 ? 0.0 : first_zero(r, q);
    return second_zero(r, q);
}

/// Closed-form u for the M = 0 second zero, u(R) = 0.
double zero_m_u(double r, double R, const Params& q) {
    if (q.p == 2.0) return q.beta / q.b * std::log(R / r);
    const double g = (q.p - 2.0) / (q.p - 1.0);
    return std::pow(q.beta / q.b, 1.0 / (q.p - 1.0)) * (q.p - 1.0) / (q.p - 2.0) *
           (std::pow(R, g) - std::pow(r, g));
}

double zero_m_u_at_zero(double R, const Params& q) {
    if (q.p <= 2.0) return kInf;
    const double g = (q.p - 2.0) / (q.p - 1.0);
    return std::pow(q.beta / q.b, 1.0 / (q.p - 1.0)) * (q.p - 1.0) / (q.p - 2.0) * std::pow(R, g);
}

bool explicit_branch(const RadialProfile& prof) {
    return prof.params.M == 0.0 && (prof.branch == ProfileBranch::ZeroM ||
                                    prof.branch == ProfileBranch::SecondZeroSuperlinear ||
                                    prof.branch == ProfileBranch::FirstZeroSuperlinear);
}

double explicit_u(const RadialProfile& prof, double r) {
    if (prof.branch == ProfileBranch::FirstZeroSuperlinear) return 0.0;
    return zero_m_u(r, prof.R, prof.params);
}

/// Improper integral of s2 over (0, r_min] for p > 2 via t = r_min w^m, which makes
/// the integrand vanish linearly at w = 0.
long singular_head(double r_min, const Params& q, double tol, long cap, double& value) {
    const double m = 2.0 * (q.p - 1.0) / (q.p - 2.0);
    const double coeff = m * std::pow(q.beta / q.b, 1.0 / (q.p - 1.0)) * std::pow(r_min, (q.p - 2.0) / (q.p - 1.0));
    auto integrand = [&](double w) {
        if (w <= 0.0) return 0.0;
        const double t = r_min * std::pow(w, m);
        if (t < 1e-100) return coeff * w; // s2(t) ~ (beta/(b t))^{1/(p-1)} as t -> 0
        return second_zero(t, q) * m * r_min * std::pow(w, m - 1.0);
    };
    const auto res = adaptive_simpson(integrand, 0.0, 1.0, tol, cap);
    value = res.value;
    return res.panels;
}

} // namespace

RadialProfile radial_profile(ProfileBranch branch, double R, const Params& q, int node_count,
                             const ProfileOptions& options) {
    q.validate();
    if (!(R > 0.0) || !std::isfinite(R)) throw InvalidInput("radial_profile: R must be > 0");
    if (node_count < 64) throw InvalidInput("radial_profile: node_count must be >= 64");
    const bool super = q.superlinear();
    if (branch == ProfileBranch::FirstZeroSublinear && super)
        throw BranchError("radial_profile: FirstZeroSublinear requires p in (0,1)");
    if (branch != ProfileBranch::FirstZeroSublinear && !super)
        throw BranchError("radial_profile: " + to_string(branch) + " requires p > 1");
    if (branch == ProfileBranch::ZeroM && q.M != 0.0) throw InvalidInput("radial_profile: ZeroM requires M = 0");

    RadialProfile prof;
    prof.params = q;
    prof.R = R;
    prof.branch = branch;
    if (super && q.M > 0.0) {
        const double rb = rbar(q);
        prof.endpoint = std::abs(R - rb) <= kEndpointTolerance * rb;
        if (!prof.endpoint && R > rb) {
            // surfaces the NoRootError at the outer radius
            (void)branch_s(branch, R, q);
            throw ThresholdViolation(R, rb);
        }
    }

    const int n = node_count;
    prof.r_grid.resize(n);
    double r_min = 0.0;
    if (first_zero_branch(branch)) {
        for (int i = 1; i <= n; ++i) {
            const double t = static_cast<double>(i) / n;
            double g = std::pow(t, 1.5);
            if (prof.endpoint) g = t <= 0.5 ? 0.5 * std::pow(2.0 * t, 1.5) : 1.0 - 0.5 * std::pow(2.0 * (1.0 - t), 1.5);
            prof.r_grid[i - 1] = R * g;
        }
    } else {
        r_min = options.r_min > 0.0 ? options.r_min : 1e-6 * R;
        if (r_min >= R) throw InvalidInput("radial_profile: r_min must be < R");
        for (int i = 0; i < n; ++i) prof.r_grid[i] = r_min * std::pow(R / r_min, static_cast<double>(i) / (n - 1));
    }
    prof.r_grid.back() = R;

    prof.s_values.resize(n);
    prof.residuals.resize(n);
    prof.u_values.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double r = prof.r_grid[i];
        prof.s_values[i] = profile_s(prof, r);
        prof.residuals[i] = phi(r, prof.s_values[i], q);
    }

    if (explicit_branch(prof)) {
        for (int i = 0; i < n; ++i) prof.u_values[i] = explicit_u(prof, prof.r_grid[i]);
        prof.u_at_zero = branch == ProfileBranch::FirstZeroSuperlinear ? 0.0 : zero_m_u_at_zero(R, q);
        return prof;
    }

    auto s_of = [&](double t) { return branch_s(branch, std::min(t, R), q); };
    long panels = 0;
    auto integrate = [&](double a, double b) {
        const auto res = adaptive_simpson(s_of, a, b, options.panel_tol, options.max_panels - panels);
        panels += res.panels;
        return res.value;
    };
    for (int i = n - 2; i >= 0; --i) prof.u_values[i] = prof.u_values[i + 1] + integrate(prof.r_grid[i], prof.r_grid[i + 1]);
    if (first_zero_branch(branch)) {
        prof.u_at_zero = prof.u_values.front() + integrate(0.0, prof.r_grid.front());
    } else if (q.p <= 2.0) {
        prof.u_at_zero = kInf;
    } else {
        double head = 0.0;
        panels += singular_head(r_min, q, options.panel_tol, options.max_panels - panels, head);
        prof.u_at_zero = prof.u_values.front() + head;
    }
    prof.panels = panels;
    return prof;
}

double profile_s(const RadialProfile& prof, double r) {
    if (!(r >= 0.0) || r > prof.R * (1.0 + kEndpointTolerance))
        throw DomainError(fmt::format("profile: r = {} outside [0, R = {}]", r, prof.R));
    r = std::min(r, prof.R);
    const Params& q = prof.params;
    if (prof.branch == ProfileBranch::ZeroM) {
        check_radius(r, "profile_s");
        return std::pow(q.beta / (q.b * r), 1.0 / (q.p - 1.0));
    }
    if (r == 0.0 && !first_zero_branch(prof.branch)) return kInf;
    return branch_s(prof.branch, r, q);
}

double profile_du(const RadialProfile& prof, double r) { return -profile_s(prof, r); }

double profile_d2u(const RadialProfile& prof, double r) {
    const Params& q = prof.params;
    const double s = profile_s(prof, r);
    if (first_zero_branch(prof.branch) && r == 0.0) return -q.M / q.beta;
    r = std::min(r, prof.R);
    if (s == 0.0) return 0.0;
    const double slope = phi_s(r, s, q);
    if (slope == 0.0) return -kInf;
    return q.beta * s / (r * r) / slope;
}

double profile_u_direct(const RadialProfile& prof, double r, double panel_tol) {
    if (!(r >= 0.0) || r > prof.R * (1.0 + kEndpointTolerance))
        throw DomainError(fmt::format("profile: r = {} outside [0, R = {}]", r, prof.R));
    r = std::min(r, prof.R);
    if (explicit_branch(prof)) return r == 0.0 ? prof.u_at_zero : explicit_u(prof, r);
    if (r == 0.0) {
        if (!first_zero_branch(prof.branch)) return prof.u_at_zero;
    }
    auto s_of = [&](double t) { return branch_s(prof.branch, std::min(t, prof.R), prof.params); };
    return adaptive_simpson(s_of, r, prof.R, panel_tol).value;
}

namespace {

double hermite(double x0, double x1, double y0, double y1, double m0, double m1, double x) {
    const double h = x1 - x0;
    const double delta = (y1 - y0) / h;
    if (delta == 0.0) {
        m0 = m1 = 0.0;
    } else {
        // Fritsch-Carlson: keep the slopes inside the monotonicity region
        double a = m0 / delta, b = m1 / delta;
        if (a < 0.0) a = 0.0;
        if (b < 0.0) b = 0.0;
        const double n2 = a * a + b * b;
        if (n2 > 9.0) {
            const double t = 3.0 / std::sqrt(n2);
            a *= t;
            b *= t;
        }
        m0 = a * delta;
        m1 = b * delta;
    }
    const double t = (x - x0) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * m1;
}

} // namespace

double profile_u(const RadialProfile& prof, double r) {
    if (!(r >= 0.0) || r > prof.R * (1.0 + kEndpointTolerance))
        throw DomainError(fmt::format("profile: r = {} outside [0, R = {}]", r, prof.R));
    r = std::min(r, prof.R);
    if (explicit_branch(prof)) return r == 0.0 ? prof.u_at_zero : explicit_u(prof, r);
    const auto& xs = prof.r_grid;
    if (r < xs.front()) {
        if (first_zero_branch(prof.branch))
            return hermite(0.0, xs.front(), prof.u_at_zero, prof.u_values.front(), 0.0, -prof.s_values.front(), r);
        if (r == 0.0) return prof.u_at_zero;
        auto s_of = [&](double t) { return branch_s(prof.branch, t, prof.params); };
        return prof.u_values.front() + adaptive_simpson(s_of, r, xs.front(), 1e-12).value;
    }
    auto it = std::upper_bound(xs.begin(), xs.end(), r);
    if (it == xs.end()) return prof.u_values.back();
    const auto i = static_cast<std::size_t>(it - xs.begin());
    return hermite(xs[i - 1], xs[i], prof.u_values[i - 1], prof.u_values[i], -prof.s_values[i - 1], -prof.s_values[i], r);
}

void write_profile_csv(std::ostream& out, const RadialProfile& prof) {
    fmt::print(out, "# branch={} R={:.17g} {}\n", to_string(prof.branch), prof.R, prof.params.describe());
    fmt::print(out, "r,s,u,residual\n");
    for (std::size_t i = 0; i < prof.r_grid.size(); ++i) {
        fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g}\n", prof.r_grid[i], prof.s_values[i], prof.u_values[i],
                   prof.residuals[i]);
    }
}

BlowupClass classify_blowup(const Params& q) {
    q.validate();
    if (!q.superlinear()) throw BranchError("classify_blowup: requires p > 1");
    BlowupClass out;
    if (q.p <= 2.0) {
        out.blowup = true;
        return out;
    }
    out.bound = std::pow(q.beta / q.b, 1.0 / (q.p - 1.0)) * (q.p - 1.0) / (q.p - 2.0) *
                std::pow(rbar(q), (q.p - 2.0) / (q.p - 1.0));
    return out;
}

double c1_bound(const Params& q, double R) {
    q.validate();
    if (!(R > 0.0)) throw InvalidInput("c1_bound: R must be > 0");
    if (q.superlinear()) {
        const double rb = rbar(q);
        if (!std::isfinite(rb)) return kInf;
        if (R > rb * (1.0 + kEndpointTolerance)) throw ThresholdViolation(R, rb);
        return std::pow(q.beta / (rb * q.p * q.b), 1.0 / (q.p - 1.0)) * (rb + 1.0);
    }
    return (1.0 + R) * std::max(std::pow(q.M, 1.0 / q.p), std::pow((1.0 + q.b) * R / q.beta, 1.0 / (1.0 - q.p)));
}

} // namespace degell
