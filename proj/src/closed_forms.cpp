#include "degell/closed_forms.hpp"

#include "degell/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <memory>

namespace degell {

namespace {

void check_sublinear(double p, double R, int N) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidInput(fmt::format("explicit solution: p must lie in (0,1) (got {})", p));
    if (!(R > 0.0)) throw InvalidInput("explicit solution: R must be > 0");
    if (N < 1) throw InvalidInput("explicit solution: N must be >= 1");
}

/// u = C (R^g - r^g) (sign = +1) or C (r^g - R^g) (sign = -1), g = (2-p)/(1-p).
struct PowerLaw {
    double C;
    double g;
    double sign;
};

PowerLaw power_law(ExplicitKind kind, double p, int N) {
    const double q = 1.0 - p;
    const double g = (2.0 - p) / q;
    switch (kind) {
    case ExplicitKind::Lambda1: return {std::pow(q, g) / (2.0 - p), g, 1.0};
    case ExplicitKind::LambdaI:
        if (N < 2) throw InvalidInput("explicit solution: LambdaI needs N >= 2");
        return {q / (2.0 - p), g, 1.0};
    case ExplicitKind::Laplacian: return {q / ((2.0 - p) * std::pow(N - 1.0 + 1.0 / q, 1.0 / q)), g, 1.0};
    case ExplicitKind::MongeAmpere: return {std::pow(q, (1.0 + N * q) / (N * q)) / (2.0 - p), g, -1.0};
    }
    throw InvalidInput("explicit solution: unknown kind");
}

} // namespace

std::string to_string(ExplicitKind kind) {
    switch (kind) {
    case ExplicitKind::Lambda1: return "Lambda1";
    case ExplicitKind::LambdaI: return "LambdaI";
    case ExplicitKind::Laplacian: return "Laplacian";
    case ExplicitKind::MongeAmpere: return "MongeAmpere";
    }
    return "?";
}

ExplicitKind parse_explicit_kind(const std::string& name) {
    for (auto k : {ExplicitKind::Lambda1, ExplicitKind::LambdaI, ExplicitKind::Laplacian, ExplicitKind::MongeAmpere})
        if (to_string(k) == name) return k;
    throw InvalidInput("unknown explicit solution kind: " + name);
}

double explicit_sublinear_solution(ExplicitKind kind, double p, double R, int N, double r) {
    check_sublinear(p, R, N);
    if (!(r >= 0.0 && r <= R)) throw InvalidInput(fmt::format("explicit solution: r = {} outside [0, R]", r));
    const PowerLaw law = power_law(kind, p, N);
    return law.sign * law.C * (std::pow(R, law.g) - std::pow(r, law.g));
}

RadialFunction explicit_sublinear_function(ExplicitKind kind, double p, double R, int N) {
    check_sublinear(p, R, N);
    const PowerLaw law = power_law(kind, p, N);
    RadialFunction out;
    out.name = fmt::format("explicit {} p={} N={}", to_string(kind), p, N);
    out.u = [=](double r) { return law.sign * law.C * (std::pow(R, law.g) - std::pow(r, law.g)); };
    out.du = [=](double r) { return -law.sign * law.C * law.g * std::pow(r, law.g - 1.0); };
    out.d2u = [=](double r) { return -law.sign * law.C * law.g * (law.g - 1.0) * std::pow(r, law.g - 2.0); };
    out.r_lo = 0.0;
    out.r_hi = R;
    return out;
}

double model_u0(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidInput("model_u0: r outside [0, 1]");
    if (r == 0.0) return 1.0 - std::log(2.0);
    const double w = std::sqrt((1.0 - r) * (1.0 + r));
    // -log r - 1/2 log((1+w)/(1-w)) = -log(1+w), using (1+w)(1-w) = r^2
    return w - std::log(1.0 + w);
}

RadialFunction model_first_zero() {
    RadialFunction out;
    out.name = "model u0";
    out.u = model_u0;
    out.du = [](double r) { return -r / (1.0 + std::sqrt((1.0 - r) * (1.0 + r))); };
    out.d2u = [](double r) {
        const double w = std::sqrt((1.0 - r) * (1.0 + r));
        return 1.0 / (1.0 + w) - 1.0 / w;
    };
    out.r_lo = 0.0;
    out.r_hi = 1.0;
    return out;
}

RadialFunction model_second_zero() {
    RadialFunction out;
    out.name = "model u2";
    out.u = [](double r) {
        const double w = std::sqrt((1.0 - r) * (1.0 + r));
        return std::log(1.0 + w) - 2.0 * std::log(r) - w;
    };
    out.du = [](double r) { return -(1.0 + std::sqrt((1.0 - r) * (1.0 + r))) / r; };
    out.d2u = [](double r) {
        const double w = std::sqrt((1.0 - r) * (1.0 + r));
        return (1.0 + w) / (r * r) + 1.0 / w;
    };
    out.r_lo = 0.0;
    out.r_hi = 1.0;
    return out;
}

RadialFunction zero_forcing_second_zero(const Params& q, double R) {
    q.validate();
    if (!q.superlinear()) throw BranchError("zero_forcing_second_zero: requires p > 1");
    if (!(R > 0.0)) throw InvalidInput("zero_forcing_second_zero: R must be > 0");
    const double k = std::pow(q.beta / q.b, 1.0 / (q.p - 1.0));
    const double e = 1.0 / (q.p - 1.0);
    RadialFunction out;
    out.name = "M=0 second zero";
    if (q.p == 2.0) {
        out.u = [=](double r) { return q.beta / q.b * std::log(R / r); };
    } else {
        const double g = (q.p - 2.0) / (q.p - 1.0);
        out.u = [=](double r) { return k * (q.p - 1.0) / (q.p - 2.0) * (std::pow(R, g) - std::pow(r, g)); };
    }
    out.du = [=](double r) { return -k * std::pow(r, -e); };
    out.d2u = [=](double r) { return k * e * std::pow(r, -e - 1.0); };
    out.r_lo = 0.0;
    out.r_hi = R;
    return out;
}

RadialFunction from_profile(const RadialProfile& profile) {
    RadialFunction out;
    out.name = "profile " + to_string(profile.branch);
    auto shared = std::make_shared<RadialProfile>(profile);
    out.u = [shared](double r) { return profile_u(*shared, r); };
    out.du = [shared](double r) { return profile_du(*shared, r); };
    out.d2u = [shared](double r) { return profile_d2u(*shared, r); };
    out.r_lo = profile.branch == ProfileBranch::FirstZeroSuperlinear || profile.branch == ProfileBranch::FirstZeroSublinear
                   ? 0.0
                   : profile.r_grid.front();
    out.r_hi = profile.R;
    return out;
}

} // namespace degell
