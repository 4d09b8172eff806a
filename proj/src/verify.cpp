#include "degell/verify.hpp"

#include "degell/eigen_kernel.hpp"
#include "degell/errors.hpp"
#include "degell/radial.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

namespace degell {

namespace {

constexpr double kEndpointMargin = 1e-3;
constexpr double kStep = 1e-5;

double five_point_first(const std::function<double(double)>& u, double r, double h) {
    return (-u(r + 2 * h) + 8 * u(r + h) - 8 * u(r - h) + u(r - 2 * h)) / (12 * h);
}

double five_point_second(const std::function<double(double)>& u, double r, double h) {
    return (-u(r + 2 * h) + 16 * u(r + h) - 30 * u(r) + 16 * u(r - h) - u(r - 2 * h)) / (12 * h * h);
}

/// Derivative by the 5-point rule, with the 2h value as a consistency check.
double checked(double fine, double coarse, const char* what, double r) {
    if (std::abs(fine - coarse) > 1e-4 * (1.0 + std::abs(fine)))
        throw DomainError(fmt::format("residual_check_radial: {} not resolved at r = {} ({} vs {})", what, r, fine, coarse));
    return fine;
}

double pointwise(const PointwiseProblem& pb, const Point& x, const SymMatrix& X, const Vector& g) {
    return evaluate_operator(pb.op, x, X) + pb.ham_sign * evaluate_hamiltonian(pb.ham, g) - pb.f(x);
}

} // namespace

std::string ResidualReport::to_text() const {
    std::string out = fmt::format("[residual]\nname = {}\ntolerance = {:.3e}\nmax_abs = {:.17g}\npassed = {}\n", name,
                                  tolerance, max_abs, passed);
    for (std::size_t i = 0; i < radii.size(); ++i) out += fmt::format("r = {:.17g} residual = {:.17g}\n", radii[i], residuals[i]);
    return out;
}

ResidualReport residual_check_radial(const RadialFunction& cand, const PointwiseProblem& pb,
                                     const std::vector<double>& radii, double tolerance) {
    if (pb.dimension < 2 || pb.dimension > 8) throw InvalidInput("residual_check_radial: dimension must be in [2, 8]");
    ResidualReport rep;
    rep.name = cand.name;
    rep.tolerance = tolerance;
    const int N = pb.dimension;
    for (double r : radii) {
        if (!(r >= cand.r_lo + kEndpointMargin && r <= cand.r_hi - kEndpointMargin))
            throw InvalidInput(fmt::format("residual_check_radial: r = {} outside ({} + 1e-3, {} - 1e-3)", r, cand.r_lo, cand.r_hi));
        const double du = cand.du ? cand.du(r)
                                  : checked(five_point_first(cand.u, r, kStep), five_point_first(cand.u, r, 2 * kStep), "u'", r);
        const double d2u = cand.d2u ? cand.d2u(r)
                                    : checked(five_point_second(cand.u, r, kStep), five_point_second(cand.u, r, 2 * kStep), "u''", r);
        Point x = Point::Zero(N);
        x(0) = r;
        SymMatrix X = SymMatrix::Identity(N, N) * (du / r);
        X(0, 0) = d2u;
        Vector g = Vector::Zero(N);
        g(0) = du;
        const double res = pointwise(pb, x, X, g);
        rep.radii.push_back(r);
        rep.residuals.push_back(res);
        rep.max_abs = std::max(rep.max_abs, std::abs(res));
    }
    rep.passed = rep.max_abs <= tolerance;
    return rep;
}

PointwiseProblem explicit_sublinear_problem(ExplicitKind kind, double p, int N) {
    if (N < 1) throw InvalidInput("explicit_sublinear_problem: N must be >= 1");
    const HamiltonianSpec ham(ham::PowerNorm{1.0, p});
    const ScalarField zero = ScalarField::constant(0.0);
    switch (kind) {
    case ExplicitKind::Lambda1: return {OperatorSpec(op::LambdaK{1}), ham, zero, N, 1.0};
    case ExplicitKind::LambdaI:
        if (N < 2) throw InvalidInput("explicit_sublinear_problem: LambdaI needs N >= 2");
        return {OperatorSpec(op::LambdaK{N}), ham, zero, N, 1.0};
    case ExplicitKind::Laplacian:
        return {OperatorSpec(op::WeightedEigenvalues{std::vector<double>(static_cast<std::size_t>(N), 1.0)}), ham, zero, N, 1.0};
    case ExplicitKind::MongeAmpere: return {OperatorSpec(op::MongeAmpere{}), ham, zero, N, -1.0};
    }
    throw InvalidInput("explicit_sublinear_problem: unknown kind");
}

SmoothField radial_field(const RadialFunction& u, const Point& center) {
    SmoothField out;
    out.value = [u, center](const Point& x) { return u.u((x - center).norm()); };
    out.gradient = [u, center](const Point& x) -> Vector {
        const Vector d = x - center;
        const double r = d.norm();
        if (r == 0.0) return Vector::Zero(d.size());
        return u.du(r) / r * d;
    };
    out.hessian = [u, center](const Point& x) -> SymMatrix {
        const Vector d = x - center;
        const double r = d.norm();
        const auto n = d.size();
        if (r == 0.0) return u.d2u(0.0) * SymMatrix::Identity(n, n);
        const Vector e = d / r;
        const double tangential = u.du(r) / r;
        return tangential * SymMatrix::Identity(n, n) + (u.d2u(r) - tangential) * e * e.transpose();
    };
    return out;
}

CertifiedField sigma_perturbation(const SmoothField& v, const SmoothField& varphi, double eps, double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw InvalidInput(fmt::format("sigma_perturbation: sigma = {} not in (0, 1)", sigma));
    if (!(eps > 0.0)) throw InvalidInput("sigma_perturbation: eps must be > 0");
    CertifiedField out;
    out.field.value = [=](const Point& x) { return sigma * v.value(x) + (1.0 - sigma) * varphi.value(x); };
    out.field.gradient = [=](const Point& x) -> Vector { return sigma * v.gradient(x) + (1.0 - sigma) * varphi.gradient(x); };
    out.field.hessian = [=](const Point& x) -> SymMatrix { return sigma * v.hessian(x) + (1.0 - sigma) * varphi.hessian(x); };
    out.slack = (1.0 - sigma) * eps;
    return out;
}

CertifiedField epsilon_scaling(const SmoothField& v, double eps, double sup_f) {
    if (!(eps > 0.0)) throw InvalidInput("epsilon_scaling: eps must be > 0");
    if (!(sup_f < 0.0)) throw InvalidInput(fmt::format("epsilon_scaling: sup f = {} must be < 0", sup_f));
    CertifiedField out;
    out.field.value = [=](const Point& x) { return (1.0 + eps) * v.value(x); };
    out.field.gradient = [=](const Point& x) -> Vector { return (1.0 + eps) * v.gradient(x); };
    out.field.hessian = [=](const Point& x) -> SymMatrix { return (1.0 + eps) * v.hessian(x); };
    out.slack = -eps * sup_f;
    return out;
}

std::string CertificateReport::to_text() const {
    return fmt::format("[certificate]\ncertified_slack = {:.17g}\nsamples = {}\nmax_chain_deviation = {:.6e}\n"
                       "min_margin = {:.17g}\npassed = {}\n",
                       certified_slack, chain_slack.size(), max_chain_deviation, min_margin, passed);
}

namespace {

void finish(CertificateReport& rep, double tolerance) {
    for (std::size_t i = 0; i < rep.chain_slack.size(); ++i) {
        rep.max_chain_deviation = std::max(rep.max_chain_deviation, std::abs(rep.chain_slack[i] - rep.certified_slack));
        rep.min_margin = std::min(rep.min_margin, rep.residual_margin[i]);
    }
    rep.passed = rep.max_chain_deviation <= tolerance && rep.min_margin >= rep.certified_slack - tolerance;
}

} // namespace

CertificateReport validate_sigma(const PointwiseProblem& pb, const Params& params, const SmoothField& v,
                                 const SmoothField& varphi, double eps, double sigma, const std::vector<Point>& points,
                                 double tolerance) {
    const CertifiedField cert = sigma_perturbation(v, varphi, eps, sigma);
    CertificateReport rep;
    rep.certified_slack = cert.slack;
    for (const auto& x : points) {
        const double fv = pointwise(pb, x, v.hessian(x), v.gradient(x)) + pb.f(x); // (F + H)(v)
        const SymMatrix P = varphi.hessian(x);
        const double lam_n = eigenvalues_sorted(P)(P.rows() - 1);
        const double extremal = params.beta * lam_n + params.b * std::pow(varphi.gradient(x).norm(), params.p) + params.c;
        rep.chain_slack.push_back(pb.f(x) - sigma * fv - (1.0 - sigma) * extremal);
        rep.residual_margin.push_back(-pointwise(pb, x, cert.field.hessian(x), cert.field.gradient(x)));
    }
    finish(rep, tolerance);
    return rep;
}

CertificateReport validate_epsilon(const PointwiseProblem& pb, const SmoothField& v, double eps, double sup_f,
                                   const std::vector<Point>& points, std::uint64_t seed, double tolerance) {
    const CertifiedField cert = epsilon_scaling(v, eps, sup_f);
    CertificateReport rep;
    rep.certified_slack = cert.slack;
    for (const auto& x : points) {
        const double f = pb.f(x);
        const double fv = pointwise(pb, x, v.hessian(x), v.gradient(x)) + f;
        rep.chain_slack.push_back(f - (1.0 + eps) * fv + eps * (f - sup_f));
        rep.residual_margin.push_back(-pointwise(pb, x, cert.field.hessian(x), cert.field.gradient(x)));
    }
    finish(rep, tolerance);
    // positive-scaling inequality of the Hamiltonian
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0), box(-2.0, 2.0);
    for (int k = 0; k < 200; ++k) {
        const double e = unit(rng);
        Vector xi(pb.dimension);
        for (int i = 0; i < pb.dimension; ++i) xi(i) = box(rng);
        if (e * evaluate_hamiltonian(pb.ham, xi) - evaluate_hamiltonian(pb.ham, e * xi) > 1e-12) rep.passed = false;
    }
    return rep;
}

std::vector<ThresholdVerdict> threshold_probe(const Params& params, const std::vector<double>& R_values, int probe_nodes) {
    params.validate();
    if (!params.superlinear()) throw BranchError("threshold_probe: requires p > 1");
    if (probe_nodes < 1) throw InvalidInput("threshold_probe: probe_nodes must be >= 1");
    const double rb = rbar(params);
    std::vector<ThresholdVerdict> out;
    for (double R : R_values) {
        if (!(R > 0.0)) throw InvalidInput("threshold_probe: R must be > 0");
        ThresholdVerdict v;
        v.R = R;
        v.exists = true;
        for (int i = 1; i <= probe_nodes; ++i) {
            const double r = R * i / probe_nodes;
            try {
                const RootInfo info = first_zero_info(r, params);
                v.endpoint = v.endpoint || info.endpoint;
            } catch (const NoRootError& e) {
                v.exists = false;
                v.r_star = e.r();
                v.gap = e.gap();
                break;
            }
        }
        if (v.exists && std::isfinite(rb) && std::abs(R - rb) <= kEndpointTolerance * rb) v.endpoint = true;
        out.push_back(v);
    }
    return out;
}

std::string to_string(const ThresholdVerdict& v) {
    if (v.exists) return v.endpoint ? "Exists(endpoint)" : "Exists";
    return fmt::format("FailsAt(r*={:.15g}, gap={:.15g})", v.r_star, v.gap);
}

std::vector<ConvergenceRow> convergence_study(const Problem& problem, const std::vector<double>& h_list,
                                              const std::function<double(double)>& oracle, const Point& center, int K,
                                              const SolveControls& controls,
                                              const std::function<Eigen::VectorXd(const Grid2D&)>& initial) {
    if (h_list.empty()) throw InvalidInput("convergence_study: empty h list");
    std::vector<ConvergenceRow> rows;
    for (double h : h_list) {
        auto grid = build_grid(problem.domain, h, K);
        SolveControls c = controls;
        if (initial) {
            c.init = InitialGuess::Field;
            c.initial = initial(*grid);
        }
        const SolveResult res = solve(problem, grid, c);
        ConvergenceRow row;
        row.h = h;
        for (int i = 0; i < grid->size(); ++i)
            row.error = std::max(row.error, std::abs(res.u.values[i] - oracle((grid->position(i) - center).norm())));
        if (!rows.empty() && row.error > 0.0 && rows.back().error > 0.0)
            row.order = std::log(rows.back().error / row.error) / std::log(rows.back().h / h);
        row.iterations = res.report.iterations;
        row.seconds = res.report.wall_seconds;
        rows.push_back(row);
    }
    return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
    fmt::print(out, "h,linf_error,observed_order,iterations\n");
    for (const auto& r : rows) fmt::print(out, "{:.17g},{:.17g},{:.17g},{}\n", r.h, r.error, r.order, r.iterations);
}

} // namespace degell
