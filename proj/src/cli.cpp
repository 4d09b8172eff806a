#include "degell/cli.hpp"

#include "degell/barriers.hpp"
#include "degell/closed_forms.hpp"
#include "degell/conditions.hpp"
#include "degell/errors.hpp"
#include "degell/grid.hpp"
#include "degell/radial.hpp"
#include "degell/solver.hpp"
#include "degell/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace degell {

namespace {

constexpr int kBoundaryProbes = 512;
constexpr int kCertificatePoints = 200;

std::string rbar_note(const Params& q) {
    if (q.M == 0.0) return "M = 0: no threshold, the first-zero profile exists on every ball";
    return "radius R = Rbar is attained with a double root at the boundary: the solution exists there but "
           "s'(R) is unbounded, so C^1 up to the boundary is sharp";
}

CommandResult cmd_rbar(const RunConfig& c) {
    if (!c.params.superlinear()) throw BranchError("rbar: the sublinear case p < 1 has no threshold radius");
    CommandResult res;
    res.summary = fmt::format("rbar = {}\nnote: {}\n", format_rbar(c.params), rbar_note(c.params));
    return res;
}

RadialProfile configured_profile(const RunConfig& c, ProfileBranch branch, double R) {
    ProfileOptions opt;
    opt.r_min = c.radial.r_min;
    return radial_profile(branch, R, c.params, c.radial.nodes, opt);
}

CommandResult cmd_radial(const RunConfig& c) {
    const ProfileBranch branch = parse_branch(c.radial.branch);
    const RadialProfile prof = configured_profile(c, branch, c.radial.R);
    double worst = 0.0;
    for (double r : prof.residuals) worst = std::max(worst, std::abs(r));
    std::ostringstream csv;
    write_profile_csv(csv, prof);
    CommandResult res;
    res.files.emplace_back("radial_profile.csv", csv.str());
    res.summary = fmt::format("radial branch={} R={:.15g} nodes={} u(0+)={:.15g} max|phi|={:.3e} endpoint={}\n",
                              to_string(branch), prof.R, prof.r_grid.size(), prof.u_at_zero, worst, prof.endpoint);
    return res;
}

CommandResult cmd_blowup(const RunConfig& c) {
    const BlowupClass cls = classify_blowup(c.params);
    const double R = c.radial.R;
    ProfileOptions opt;
    opt.r_min = c.radial.r_min > 0.0 ? c.radial.r_min : 1e-6 * R;
    const ProfileBranch branch = c.params.M == 0.0 ? ProfileBranch::ZeroM : ProfileBranch::SecondZeroSuperlinear;
    const RadialProfile prof = radial_profile(branch, R, c.params, c.radial.nodes, opt);
    std::string csv = "k,r,u\n";
    double last = 0.0;
    for (int k = 1; k <= 6; ++k) {
        const double r = R * std::pow(10.0, -k);
        if (r < opt.r_min) break;
        last = profile_u(prof, r);
        csv += fmt::format("{},{:.17g},{:.17g}\n", k, r, last);
    }
    CommandResult res;
    res.files.emplace_back("blowup.csv", csv);
    if (cls.blowup)
        res.summary = fmt::format("blowup: second-zero profile unbounded at the origin (p = {:.15g} <= 2); u(1e-6 R) = {:.15g}\n",
                                  c.params.p, last);
    else
        res.summary = fmt::format("blowup: bounded (p = {:.15g} > 2); sup u = {:.15g} <= bound {:.15g}\n", c.params.p,
                                  prof.u_at_zero, cls.bound);
    return res;
}

CommandResult cmd_explicit(const RunConfig& c) {
    const auto& e = c.explicit_solution;
    const ExplicitKind kind = parse_explicit_kind(e.kind);
    const RadialFunction fn = explicit_sublinear_function(kind, e.p, e.R, e.N);
    const PointwiseProblem pb = explicit_sublinear_problem(kind, e.p, e.N);
    const ResidualReport rep = residual_check_radial(fn, pb, e.radii, 1e-6);
    std::string csv = "r,u,du,d2u,residual\n";
    for (std::size_t i = 0; i < e.radii.size(); ++i) {
        const double r = e.radii[i];
        csv += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", r, fn.u(r), fn.du(r), fn.d2u(r), rep.residuals[i]);
    }
    CommandResult res;
    res.files.emplace_back("explicit.csv", csv);
    res.status = rep.passed ? kExitOk : kExitVerification;
    res.summary = fmt::format("explicit {} p={:.15g} N={} max|residual|={:.3e} tol={:.1e} [{}]\n", to_string(kind), e.p, e.N,
                              rep.max_abs, rep.tolerance, rep.passed ? "PASS" : "FAIL");
    return res;
}

CommandResult cmd_barrier(const RunConfig& c) {
    const Problem pb = make_problem(c);
    const double M = forcing_negative_part(pb);
    const double K = std::max(0.0, pb.f.upper + c.params.d);
    const BarrierField super = build_supersolution(pb.domain, c.params, M);
    const BarrierField sub = build_subsolution(pb.domain, c.params, K);
    double pinch = 0.0;
    for (const Point& x : sample_boundary(pb.domain, kBoundaryProbes))
        pinch = std::max({pinch, std::abs(evaluate_barrier(super, x)), std::abs(evaluate_barrier(sub, x))});
    std::ostringstream a, b;
    write_barrier_csv(a, super, c.solver.h);
    write_barrier_csv(b, sub, c.solver.h);
    CommandResult res;
    res.files.emplace_back("barrier_super.csv", a.str());
    res.files.emplace_back("barrier_sub.csv", b.str());
    const bool ok = pinch <= 1e-6;
    res.status = ok ? kExitOk : kExitVerification;
    res.summary = fmt::format("barrier M={:.15g} K={:.15g} boundary pinch={:.3e} at {} points [{}]\n", M, K, pinch,
                              kBoundaryProbes, ok ? "PASS" : "FAIL");
    return res;
}

CommandResult cmd_solve(const RunConfig& c) {
    const Problem pb = make_problem(c);
    const SolveControls controls = make_controls(c);
    const auto grid = build_grid(pb.domain, c.solver.h, c.solver.K);
    const SolveResult sol = solve(pb, grid, controls);
    std::ostringstream csv, rep;
    write_solution_csv(csv, sol.u);
    write_solve_report(rep, sol.report, false);
    CommandResult res;
    res.files.emplace_back("solution.csv", csv.str());
    res.files.emplace_back("solve_report.txt", rep.str());
    res.summary = fmt::format("solve nodes={} iterations={} residual={:.3e} max u={:.15g} min u={:.15g} time={:.2f}s\n",
                              grid->size(), sol.report.iterations, sol.report.residual_norm, sol.u.values.maxCoeff(),
                              sol.u.values.minCoeff(), sol.report.wall_seconds);
    return res;
}

std::vector<Point> ball_samples(int dim, double R, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> radius(0.02 * R, 0.98 * R);
    std::vector<Point> pts;
    for (int k = 0; k < kCertificatePoints; ++k) {
        Point x(dim);
        for (int i = 0; i < dim; ++i) x(i) = gauss(rng);
        pts.push_back(radius(rng) * x.normalized());
    }
    return pts;
}

// Structural conditions, radial solution residual, perturbation certificate and threshold probe
// for the configured operator and Hamiltonian with f = -M on the ball of the domain radius.
CommandResult cmd_verify(const RunConfig& c) {
    const OperatorSpec op = make_operator(c);
    const HamiltonianSpec ham = make_hamiltonian(c);
    const Params& q = c.params;
    const int dim = c.dimension;
    bool ok = true;
    std::string text;
    auto line = [&](const std::string& name, bool passed, const std::string& detail) {
        ok = ok && passed;
        text += fmt::format("[{}] {}: {}\n", passed ? "PASS" : "FAIL", name, detail);
    };

    const ConditionReport cond = check_structural_conditions(op, ham, q, 256, c.seed, dim);
    line("structural conditions", cond.passed(), fmt::format("{} samples", cond.samples));
    std::string report = cond.to_text() + "\n";

    if (q.M == 0.0) {
        text += "[SKIP] radial residual and certificates: M = 0 gives the zero solution\n";
    } else {
        const double rb = q.superlinear() ? rbar(q) : kInf;
        const double R = std::min(c.domain_radius, rb);
        const ProfileBranch branch = q.superlinear() ? ProfileBranch::FirstZeroSuperlinear : ProfileBranch::FirstZeroSublinear;
        const RadialFunction u = from_profile(configured_profile(c, branch, R));
        const PointwiseProblem pb{op, ham, ScalarField::constant(-q.M), dim, 1.0};
        std::vector<double> radii;
        for (int i = 1; i <= 16; ++i) radii.push_back(R * (0.01 + 0.97 * i / 16.0));
        const ResidualReport res = residual_check_radial(u, pb, radii, 1e-6);
        line("radial residual", res.passed, fmt::format("R={:.15g} max={:.3e}", R, res.max_abs));
        report += res.to_text() + "\n";

        // certificates on a ball safely inside the threshold, so that M + eps still admits a profile
        const double Rc = q.superlinear() ? std::min(c.domain_radius, 0.9 * rb) : c.domain_radius;
        const double eps = 0.1 * q.M;
        const Point center = Point::Zero(dim);
        const SmoothField v = radial_field(from_profile(configured_profile(c, branch, Rc)), center);
        const auto pts = ball_samples(dim, Rc, c.seed);
        CertificateReport cert;
        if (q.superlinear()) {
            RunConfig shifted = c;
            shifted.params.M = q.M + eps;
            const SmoothField varphi = radial_field(from_profile(configured_profile(shifted, branch, Rc)), center);
            cert = validate_sigma(pb, q, v, varphi, eps, 0.9, pts);
            line("sigma certificate", cert.passed,
                 fmt::format("slack={:.15g} min margin={:.15g} chain deviation={:.3e}", cert.certified_slack,
                             cert.min_margin, cert.max_chain_deviation));
        } else {
            cert = validate_epsilon(pb, v, eps, -q.M, pts, c.seed);
            line("epsilon certificate", cert.passed,
                 fmt::format("slack={:.15g} min margin={:.15g} chain deviation={:.3e}", cert.certified_slack,
                             cert.min_margin, cert.max_chain_deviation));
        }
        report += cert.to_text() + "\n";

        if (q.superlinear()) {
            const auto verdicts = threshold_probe(q, {0.99 * rb, rb, 1.01 * rb}, c.sweep.probe_nodes);
            const bool shape = verdicts[0].exists && !verdicts[0].endpoint && verdicts[1].exists && verdicts[1].endpoint &&
                               !verdicts[2].exists;
            line("threshold probe", shape,
                 fmt::format("{} / {} / {}", to_string(verdicts[0]), to_string(verdicts[1]), to_string(verdicts[2])));
        }
    }
    report += text;
    CommandResult out;
    out.files.emplace_back("verify_report.txt", report);
    out.status = ok ? kExitOk : kExitVerification;
    out.summary = text + fmt::format("verify: {}\n", ok ? "PASS" : "FAIL");
    return out;
}

CommandResult cmd_sweep(const RunConfig& c) {
    if (!c.params.superlinear()) throw BranchError("sweep: the sublinear case p < 1 has no threshold radius");
    const double rb = rbar(c.params);
    if (!std::isfinite(rb)) throw InvalidInput("sweep: M = 0 has no threshold to sweep around");
    std::vector<double> Rs;
    for (double f : c.sweep.factors) {
        if (!(f > 0.0)) throw InvalidInput("sweep: factors must be > 0");
        Rs.push_back(f * rb);
    }
    const auto verdicts = threshold_probe(c.params, Rs, c.sweep.probe_nodes);
    std::string csv = "factor,R,exists,endpoint,r_star,gap\n";
    CommandResult res;
    res.summary = fmt::format("rbar = {}\n", format_rbar(c.params));
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        const auto& v = verdicts[i];
        csv += fmt::format("{:.17g},{:.17g},{},{},{:.17g},{:.17g}\n", c.sweep.factors[i], v.R, int(v.exists), int(v.endpoint),
                           v.r_star, v.gap);
        res.summary += fmt::format("R = {:.15g} ({:.15g} Rbar): {}\n", v.R, c.sweep.factors[i], to_string(v));
    }
    res.files.emplace_back("sweep.csv", csv);
    return res;
}

} // namespace

std::string format_rbar(const Params& params) {
    const double rb = rbar(params);
    return std::isfinite(rb) ? fmt::format("{:#.15g}", rb) : "inf";
}

CommandResult run_command(const RunConfig& c) {
    c.params.validate();
    if (c.command == "rbar") return cmd_rbar(c);
    if (c.command == "radial") return cmd_radial(c);
    if (c.command == "blowup") return cmd_blowup(c);
    if (c.command == "explicit") return cmd_explicit(c);
    if (c.command == "barrier") return cmd_barrier(c);
    if (c.command == "solve") return cmd_solve(c);
    if (c.command == "verify") return cmd_verify(c);
    if (c.command == "sweep") return cmd_sweep(c);
    throw InvalidInput("unknown command '" + c.command + "'");
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InvalidInput*>(&e) || dynamic_cast<const BranchError*>(&e) ||
        dynamic_cast<const UnsupportedDiscretization*>(&e))
        return kExitConfig;
    return kExitNumeric;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
    CommandResult res;
    try {
        res = run_command(config);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    if (!res.files.empty()) {
        namespace fs = std::filesystem;
        const fs::path dir(config.output_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) {
            err << "error: cannot create output directory " << dir << ": " << ec.message() << '\n';
            return kExitConfig;
        }
        for (const auto& [name, contents] : res.files) {
            std::ofstream f(dir / name, std::ios::binary);
            f << contents;
            if (!f) {
                err << "error: cannot write " << (dir / name) << '\n';
                return kExitConfig;
            }
        }
    }
    out << res.summary;
    return res.status;
}

} // namespace degell
