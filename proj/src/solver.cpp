#include "degell/solver.hpp"

#include "degell/barriers.hpp"
#include "degell/errors.hpp"
#include "degell/radial.hpp"

#include <Eigen/LU>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <barrier>
#include <chrono>
#include <cmath>
#include <ostream>
#include <thread>

namespace degell {

namespace {

/// How F_h combines the directional second differences at a node.
struct Combination {
    enum class Mode { Extremal, Nonconvex, Linear } mode = Mode::Extremal;
    double cmin = 0.0; // Extremal: cmin * min_k D_k + cmax * max_k D_k
    double cmax = 0.0;
    int i = 1, j = 1;  // Nonconvex: lambda_i + min(lambda_j, 0)
};

Combination combination(const OperatorSpec& spec) {
    using Mode = Combination::Mode;
    auto unsupported = [&](const std::string& why) {
        return UnsupportedDiscretization("grid solver: " + spec.name() + " " + why);
    };
    auto index_pair = [&](int k) -> Combination {
        if (k == 1) return {Mode::Extremal, 1.0, 0.0};
        if (k == 2) return {Mode::Extremal, 0.0, 1.0};
        throw unsupported("needs an eigenvalue index in {1, 2}");
    };
    const auto& kind = spec.kind();
    if (const auto* w = std::get_if<op::WeightedEigenvalues>(&kind)) {
        if (w->alpha.size() != 2) throw unsupported("needs N = 2 weights");
        return {Mode::Extremal, w->alpha[0], w->alpha[1]};
    }
    if (const auto* l = std::get_if<op::LambdaK>(&kind)) return index_pair(l->index);
    if (const auto* t = std::get_if<op::TruncatedLower>(&kind)) {
        if (t->k == 2) return {Mode::Extremal, 1.0, 1.0};
        return index_pair(t->k);
    }
    if (const auto* t = std::get_if<op::TruncatedUpper>(&kind)) {
        if (t->k == 2) return {Mode::Extremal, 1.0, 1.0};
        if (t->k == 1) return {Mode::Extremal, 0.0, 1.0};
        throw unsupported("needs k in {1, 2}");
    }
    if (spec.is<op::MinMax>()) return {Mode::Extremal, 1.0, 1.0};
    if (const auto* nc = std::get_if<op::NonconvexPair>(&kind)) {
        if (nc->i > 2 || nc->j > 2) throw unsupported("needs indices in {1, 2}");
        Combination c{Mode::Nonconvex};
        c.i = nc->i;
        c.j = nc->j;
        return c;
    }
    if (spec.is<op::CoefficientLambdaN>()) return {Mode::Extremal, 0.0, 1.0};
    if (spec.is<op::LinearDegenerate>()) return {Mode::Linear};
    throw unsupported("has no monotone wide-stencil discretization here");
}

Eigen::Matrix2d coefficient_matrix(const op::LinearDegenerate& l, const Point& x) {
    const SymMatrix S = l.sigma(x);
    const SymMatrix A = S.transpose() * S;
    if (A.rows() != 2 || A.cols() != 2) throw UnsupportedDiscretization("grid solver: Sigma(x) must be 2x2");
    return A;
}

/// Precomputed stencil coefficients in structure-of-arrays form; index n is a ghost zero.
class Scheme {
public:
    Scheme(const Problem& problem, std::shared_ptr<const Grid2D> grid) : grid_(std::move(grid)), ham_(problem.ham) {
        comb_ = combination(problem.op);
        const int n = grid_->size();
        K_ = grid_->direction_count();
        n_ = n;
        f_.resize(n);
        cmax_.assign(n, comb_.cmax);
        weight_.resize(n);
        c0max_.resize(n);
        for (int i = 0; i < n; ++i) {
            const Point x = grid_->position(i);
            f_[i] = problem.f(x);
            if (const auto* c = std::get_if<op::CoefficientLambdaN>(&problem.op.kind())) cmax_[i] = c->a(x);
        }

        auto push_pair = [&](const StencilPair& p, double scale, std::vector<int>& ip, std::vector<int>& im,
                             std::vector<double>& wp, std::vector<double>& wm) {
            const double a = p.plus.dist, b = p.minus.dist;
            ip.push_back(p.plus.index < 0 ? n : p.plus.index);
            im.push_back(p.minus.index < 0 ? n : p.minus.index);
            wp.push_back(scale * 2.0 / ((a + b) * a));
            wm.push_back(scale * 2.0 / ((a + b) * b));
        };

        if (comb_.mode == Combination::Mode::Linear) {
            const auto& l = problem.op.as<op::LinearDegenerate>();
            lin_start_.push_back(0);
            for (int i = 0; i < n; ++i) {
                double w = 0.0, c0 = 0.0;
                for (const auto& term : selling_decomposition(coefficient_matrix(l, grid_->position(i)))) {
                    const double scale = term.weight * term.e.squaredNorm();
                    push_pair(grid_->make_pair(i, term.e), scale, ip_, im_, wp_, wm_);
                    w += scale;
                    c0 += wp_.back() + wm_.back();
                }
                lin_start_.push_back(static_cast<int>(ip_.size()));
                weight_[i] = w;
                c0max_[i] = c0;
            }
        } else {
            for (int i = 0; i < n; ++i) {
                double c0 = 0.0;
                for (int k = 0; k < K_; ++k) {
                    push_pair(grid_->pair(i, k), 1.0, ip_, im_, wp_, wm_);
                    c0 = std::max(c0, wp_.back() + wm_.back());
                }
                weight_[i] = comb_.mode == Combination::Mode::Nonconvex ? 2.0 : comb_.cmin + cmax_[i];
                c0max_[i] = weight_[i] * c0;
            }
        }
        for (int i = 0; i < n; ++i) {
            for (int a = 0; a < 2; ++a) {
                const StencilPair& p = grid_->axis(i, a);
                const double ap = p.plus.dist, am = p.minus.dist;
                const double den = ap * am * (ap + am);
                gip_.push_back(p.plus.index < 0 ? n : p.plus.index);
                gim_.push_back(p.minus.index < 0 ? n : p.minus.index);
                gp_.push_back(am * am / den);
                gm_.push_back(ap * ap / den);
            }
        }
        if (const auto* pw = std::get_if<ham::PowerNorm>(&ham_.kind())) {
            power_ = true;
            hb_ = pw->b;
            hp_ = pw->p;
        }
        f_norm_ = 0.0;
        for (double v : f_) f_norm_ = std::max(f_norm_, std::abs(v));
    }

    int size() const { return n_; }
    double f_norm() const { return f_norm_; }
    double weight(int i) const { return weight_[i]; }
    double diagonal(int i) const { return c0max_[i]; }

    /// F_h + H_h - f at node i; `u` has the ghost zero at index n.
    double residual(const double* u, int i) const {
        const double u0 = u[i];
        double F;
        if (comb_.mode == Combination::Mode::Linear) {
            F = 0.0;
            for (int t = lin_start_[i]; t < lin_start_[i + 1]; ++t)
                F += wp_[t] * (u[ip_[t]] - u0) + wm_[t] * (u[im_[t]] - u0);
        } else {
            double dmin = kInf, dmax = -kInf;
            const std::size_t base = static_cast<std::size_t>(i) * K_;
            for (int k = 0; k < K_; ++k) {
                const std::size_t t = base + k;
                const double d = wp_[t] * (u[ip_[t]] - u0) + wm_[t] * (u[im_[t]] - u0);
                dmin = std::min(dmin, d);
                dmax = std::max(dmax, d);
            }
            if (comb_.mode == Combination::Mode::Extremal) {
                F = comb_.cmin * dmin + cmax_[i] * dmax;
            } else {
                const double li = comb_.i == 1 ? dmin : dmax;
                const double lj = comb_.j == 1 ? dmin : dmax;
                F = li + std::min(lj, 0.0);
            }
        }
        const std::size_t g = 2 * static_cast<std::size_t>(i);
        const double gx = gp_[g] * (u[gip_[g]] - u0) - gm_[g] * (u[gim_[g]] - u0);
        const double gy = gp_[g + 1] * (u[gip_[g + 1]] - u0) - gm_[g + 1] * (u[gim_[g + 1]] - u0);
        double H;
        if (power_) {
            const double n2 = gx * gx + gy * gy;
            H = hp_ == 2.0 ? hb_ * n2 : hb_ * std::pow(n2, 0.5 * hp_);
        } else {
            Vector xi(2);
            xi << gx, gy;
            H = evaluate_hamiltonian(ham_, xi);
        }
        return F + H - f_[i];
    }

private:
    std::shared_ptr<const Grid2D> grid_;
    HamiltonianSpec ham_;
    Combination comb_;
    int n_ = 0;
    int K_ = 0;
    std::vector<double> f_, cmax_, weight_, c0max_;
    std::vector<int> ip_, im_, lin_start_;
    std::vector<double> wp_, wm_;
    std::vector<int> gip_, gim_;
    std::vector<double> gp_, gm_;
    bool power_ = false;
    double hb_ = 0.0, hp_ = 0.0;
    double f_norm_ = 0.0;
};

Eigen::VectorXd with_ghost(const GridFunction& u) {
    Eigen::VectorXd v(u.values.size() + 1);
    v.head(u.values.size()) = u.values;
    v(u.values.size()) = 0.0;
    return v;
}

} // namespace

std::vector<SellingTerm> selling_decomposition(const Eigen::Matrix2d& A) {
    if (!A.allFinite() || std::abs(A(0, 1) - A(1, 0)) > 1e-12 * (1.0 + A.norm()))
        throw InvalidInput("selling_decomposition: A must be finite and symmetric");
    const Eigen::Matrix2d S = 0.5 * (A + A.transpose());
    if (S.trace() < 0.0 || S.determinant() < -1e-14 * S.squaredNorm())
        throw InvalidInput("selling_decomposition: A must be positive semidefinite");
    Eigen::Vector2i b[3] = {{1, 0}, {0, 1}, {-1, -1}};
    auto dot = [&](const Eigen::Vector2i& x, const Eigen::Vector2i& y) { return x.cast<double>().dot(S * y.cast<double>()); };
    const double tol = 1e-14 * S.trace();
    for (int iter = 0;; ++iter) {
        if (iter > 10000) throw UnsupportedDiscretization("selling_decomposition: no obtuse superbase found (A too degenerate)");
        bool changed = false;
        for (int i = 0; i < 3 && !changed; ++i) {
            for (int j = i + 1; j < 3 && !changed; ++j) {
                if (dot(b[i], b[j]) > tol) {
                    const int k = 3 - i - j;
                    const Eigen::Vector2i bi = b[i], bj = b[j];
                    b[i] = -bi;
                    b[k] = bi - bj;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    std::vector<SellingTerm> out;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const double w = -dot(b[j], b[k]);
        if (w > 0.0) out.push_back({Eigen::Vector2i(-b[i](1), b[i](0)), w});
    }
    return out;
}

double forcing_negative_part(const Problem& problem) {
    return std::max(0.0, problem.params.c - problem.f.lower);
}

double stable_tau(const OperatorSpec& op, double h) {
    const double w = hessian_weight(op);
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidInput("stable_tau: operator has no finite Hessian weight");
    return h * h / (4.0 * w);
}

double discrete_operator(const OperatorSpec& spec, const GridFunction& u, int node) {
    const Combination comb = combination(spec);
    const Grid2D& g = *u.grid;
    if (comb.mode == Combination::Mode::Linear) {
        const auto& l = spec.as<op::LinearDegenerate>();
        double F = 0.0;
        for (const auto& term : selling_decomposition(coefficient_matrix(l, g.position(node))))
            F += term.weight * term.e.squaredNorm() * discrete_second_difference(u, node, g.make_pair(node, term.e));
        return F;
    }
    double dmin = kInf, dmax = -kInf;
    for (int k = 0; k < g.direction_count(); ++k) {
        const double d = discrete_second_difference(u, node, k);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    if (comb.mode == Combination::Mode::Nonconvex) {
        const double li = comb.i == 1 ? dmin : dmax;
        const double lj = comb.j == 1 ? dmin : dmax;
        return li + std::min(lj, 0.0);
    }
    double cmax = comb.cmax;
    if (const auto* c = std::get_if<op::CoefficientLambdaN>(&spec.kind())) cmax = c->a(g.position(node));
    return comb.cmin * dmin + cmax * dmax;
}

double discrete_hamiltonian(const HamiltonianSpec& ham, const GridFunction& u, int node) {
    const Eigen::Vector2d g = discrete_gradient(u, node);
    Vector xi(2);
    xi << g(0), g(1);
    return evaluate_hamiltonian(ham, xi);
}

double residual_norm(const Problem& problem, const GridFunction& u) {
    const Scheme scheme(problem, u.grid);
    const Eigen::VectorXd v = with_ghost(u);
    double worst = 0.0;
    for (int i = 0; i < scheme.size(); ++i) worst = std::max(worst, std::abs(scheme.residual(v.data(), i)));
    return worst;
}

SolveResult solve(const Problem& problem, std::shared_ptr<const Grid2D> grid, const SolveControls& controls) {
    const auto start = std::chrono::steady_clock::now();
    problem.params.validate();
    if (!(controls.tol > 0.0)) throw InvalidInput("solve: tol must be > 0");
    if (controls.max_iter < 1) throw InvalidInput("solve: max_iter must be >= 1");
    if (controls.threads < 1) throw InvalidInput("solve: threads must be >= 1");
    if (!(problem.f.lower <= problem.f.upper)) throw InvalidInput("solve: forcing bounds are inconsistent");

    const double M = forcing_negative_part(problem);
    if (problem.params.superlinear() && M > 0.0) {
        const double rb = rbar(problem.params.with_M(M));
        if (problem.domain.radius() > rb * (1.0 + kEndpointTolerance)) throw ThresholdViolation(problem.domain.radius(), rb);
    }

    const Scheme scheme(problem, grid);
    const int n = scheme.size();
    const double h = grid->h();
    double tau = 0.0;
    if (problem.op.is<op::LinearDegenerate>()) {
        double w = 0.0;
        for (int i = 0; i < n; ++i) w = std::max(w, scheme.weight(i));
        tau = h * h / (4.0 * w);
    } else {
        tau = stable_tau(problem.op, h);
    }
    if (controls.tau > 0.0) {
        if (controls.tau > tau * (1.0 + 1e-12))
            throw InvalidInput(fmt::format("solve: tau = {} exceeds the stability bound {}", controls.tau, tau));
        tau = controls.tau;
    } else if (controls.tau < 0.0) {
        throw InvalidInput("solve: tau must be >= 0");
    }
    std::vector<double> tau_i(n);
    for (int i = 0; i < n; ++i) tau_i[i] = std::min(tau, 1.0 / (2.0 * scheme.diagonal(i)));

    Eigen::VectorXd u = Eigen::VectorXd::Zero(n + 1);
    switch (controls.init) {
    case InitialGuess::Zero: break;
    case InitialGuess::Barrier: {
        const BarrierField bar = build_supersolution(problem.domain, problem.params, M);
        for (int i = 0; i < n; ++i) u[i] = evaluate_barrier(bar, grid->position(i));
        break;
    }
    case InitialGuess::Field:
        if (!controls.initial || controls.initial->size() != n) throw InvalidInput("solve: initial field missing or of wrong size");
        u.head(n) = *controls.initial;
        break;
    }
    Eigen::VectorXd next = u;

    const double target = controls.tol * (1.0 + scheme.f_norm());
    SolveReport report;
    report.tau = tau;

    const int workers = std::min(controls.threads, std::max(1, n / 256));
    std::vector<double> part_res(workers), part_upd(workers);
    std::vector<char> part_bad(workers);
    auto sweep = [&](int w) {
        const int lo = static_cast<int>(static_cast<long>(n) * w / workers);
        const int hi = static_cast<int>(static_cast<long>(n) * (w + 1) / workers);
        double rmax = 0.0, umax = 0.0;
        bool bad = false;
        const double* src = u.data();
        double* dst = next.data();
        for (int i = lo; i < hi; ++i) {
            const double r = scheme.residual(src, i);
            if (!std::isfinite(r)) bad = true;
            const double step = tau_i[i] * r;
            dst[i] = src[i] + step;
            rmax = std::max(rmax, std::abs(r));
            umax = std::max(umax, std::abs(step));
        }
        part_res[w] = rmax;
        part_upd[w] = umax;
        part_bad[w] = bad;
    };

    std::barrier sync(workers);
    bool stop = false;
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (;;) {
                sync.arrive_and_wait();
                if (stop) return;
                sweep(w);
                sync.arrive_and_wait();
            }
        });
    }
    auto run_sweep = [&] {
        if (workers > 1) sync.arrive_and_wait();
        sweep(0);
        if (workers > 1) sync.arrive_and_wait();
    };
    auto shutdown = [&] {
        stop = true;
        if (workers > 1) sync.arrive_and_wait();
        for (auto& t : pool) t.join();
    };

    bool converged = false;
    std::string failure;
    double rmax = 0.0;
    for (long it = 0;; ++it) {
        run_sweep();
        rmax = *std::max_element(part_res.begin(), part_res.end());
        const double umax = *std::max_element(part_upd.begin(), part_upd.end());
        if (std::any_of(part_bad.begin(), part_bad.end(), [](char b) { return b != 0; })) {
            failure = fmt::format("solve: non-finite residual at iteration {}", it);
            break;
        }
        if (it % controls.history_stride == 0) report.residual_history.push_back(rmax);
        if (rmax <= target) {
            converged = true;
            report.iterations = it;
            break;
        }
        if (it >= controls.max_iter) {
            failure = fmt::format("solve: no convergence after {} iterations (residual {:.3e} > {:.3e})", it, rmax, target);
            break;
        }
        report.update_norm = umax;
        u.swap(next);
    }
    shutdown();
    report.residual_history.push_back(rmax);
    if (!converged) throw NonConvergence(failure, report.residual_history);

    GridFunction out(grid, u.head(n));
    report.residual_norm = residual_norm(problem, out);
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {std::move(out), std::move(report)};
}

void write_solution_csv(std::ostream& out, const GridFunction& u) {
    fmt::print(out, "x,y,u\n");
    for (int i = 0; i < u.grid->size(); ++i) {
        const Point x = u.grid->position(i);
        fmt::print(out, "{:.17g},{:.17g},{:.17g}\n", x(0), x(1), u.values[i]);
    }
}

void write_solve_report(std::ostream& out, const SolveReport& r, bool timing) {
    fmt::print(out, "[solve]\niterations = {}\nupdate_norm = {:.17g}\nresidual_norm = {:.17g}\ntau = {:.17g}\n", r.iterations,
               r.update_norm, r.residual_norm, r.tau);
    if (timing) fmt::print(out, "wall_seconds = {:.6f}\n", r.wall_seconds);
}

} // namespace degell
