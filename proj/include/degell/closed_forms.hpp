#pragma once

#include "degell/params.hpp"
#include "degell/radial.hpp"

#include <functional>
#include <string>

namespace degell {

/// Radial function u(|x|) with its first two derivatives on (r_lo, r_hi).
/// Empty du / d2u mean "difference numerically".
struct RadialFunction {
    std::string name;
    std::function<double(double)> u;
    std::function<double(double)> du;
    std::function<double(double)> d2u;
    double r_lo = 0.0;
    double r_hi = 1.0;
};

/// Zero right-hand side solutions of the sublinear problems on B_R:
/// Lambda1: lambda_1 + |Du|^p = 0, LambdaI: lambda_i + |Du|^p = 0 (i >= 2),
/// Laplacian: Delta u + |Du|^p = 0, MongeAmpere: det(D^2 u)^{1/N} = |Du|^p (convex, <= 0).
enum class ExplicitKind { Lambda1, LambdaI, Laplacian, MongeAmpere };

std::string to_string(ExplicitKind kind);
ExplicitKind parse_explicit_kind(const std::string& name);

double explicit_sublinear_solution(ExplicitKind kind, double p, double R, int N, double r);
RadialFunction explicit_sublinear_function(ExplicitKind kind, double p, double R, int N);

/// Model case beta = p = 2, b = M = 1 on the unit ball: bounded first-zero solution u_0
/// and the singular second-zero solution u_2.
double model_u0(double r);
RadialFunction model_first_zero();
RadialFunction model_second_zero();

/// M = 0 second-zero solution on B_R: (beta/b) log(R/r) for p = 2, power law otherwise.
RadialFunction zero_forcing_second_zero(const Params& params, double R);

/// Wraps a tabulated profile (interpolated u, exact u', implicit u'').
RadialFunction from_profile(const RadialProfile& profile);

} // namespace degell
