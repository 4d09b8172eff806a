#include "degell/operators.hpp"

#include "degell/eigen_kernel.hpp"
#include "degell/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace degell {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_kind(const OperatorSpec::Kind& kind) {
    std::visit(overloaded{
                   [](const op::WeightedEigenvalues& w) {
                       if (w.alpha.empty()) throw InvalidInput("WeightedEigenvalues: empty alpha");
                       double sum = 0.0;
                       for (double a : w.alpha) {
                           if (!std::isfinite(a) || a < 0.0)
                               throw InvalidInput("WeightedEigenvalues: alpha_i must be finite and >= 0");
                           sum += a;
                       }
                       if (sum <= 0.0) throw InvalidInput("WeightedEigenvalues: sum of alpha must be > 0");
                   },
                   [](const op::LambdaK& l) {
                       if (l.index < 1) throw InvalidInput("LambdaK: index must be >= 1");
                   },
                   [](const op::TruncatedLower& t) {
                       if (t.k < 1) throw InvalidInput("TruncatedLower: k must be >= 1");
                   },
                   [](const op::TruncatedUpper& t) {
                       if (t.k < 1) throw InvalidInput("TruncatedUpper: k must be >= 1");
                   },
                   [](const op::MinMax&) {},
                   [](const op::NonconvexPair& n) {
                       if (n.i < 1 || n.j < 1) throw InvalidInput("NonconvexPair: indices must be >= 1");
                   },
                   [](const op::LinearDegenerate& l) {
                       if (!l.sigma.eval) throw InvalidInput("LinearDegenerate: missing Sigma field");
                       if (!(l.sigma.inf_lambda_max > 0.0))
                           throw InvalidInput("LinearDegenerate: inf_x lambda_N(Sigma^T Sigma) must be > 0");
                   },
                   [](const op::CoefficientLambdaN& c) {
                       if (!c.a.eval) throw InvalidInput("CoefficientLambdaN: missing coefficient field");
                       if (!(c.a.lower > 0.0)) throw InvalidInput("CoefficientLambdaN: inf_x a(x) must be > 0");
                   },
                   [](const op::MongeAmpere&) {},
                   [](const op::SupInf& s) {
                       if (s.table.empty()) throw InvalidInput("SupInf: empty family");
                       for (const auto& row : s.table)
                           if (row.empty()) throw InvalidInput("SupInf: empty inner family");
                   },
               },
               kind);
}

void check_index(int index, Eigen::Index n, const char* what) {
    if (index > n) throw InvalidInput(fmt::format("{}: index {} exceeds dimension {}", what, index, n));
}

double negative_part(double t) { return std::max(-t, 0.0); }

} // namespace

OperatorSpec::OperatorSpec(Kind kind) : kind_(std::move(kind)) { validate_kind(kind_); }

std::string OperatorSpec::name() const {
    return std::visit(overloaded{
                          [](const op::WeightedEigenvalues&) -> std::string { return "WeightedEigenvalues"; },
                          [](const op::LambdaK& l) { return fmt::format("LambdaK({})", l.index); },
                          [](const op::TruncatedLower& t) { return fmt::format("TruncatedLower({})", t.k); },
                          [](const op::TruncatedUpper& t) { return fmt::format("TruncatedUpper({})", t.k); },
                          [](const op::MinMax&) -> std::string { return "MinMax"; },
                          [](const op::NonconvexPair& n) { return fmt::format("NonconvexPair({},{})", n.i, n.j); },
                          [](const op::LinearDegenerate&) -> std::string { return "LinearDegenerate"; },
                          [](const op::CoefficientLambdaN&) -> std::string { return "CoefficientLambdaN"; },
                          [](const op::MongeAmpere&) -> std::string { return "MongeAmpere"; },
                          [](const op::SupInf&) -> std::string { return "SupInf"; },
                      },
                      kind_);
}

bool is_spectral(const OperatorSpec& spec) {
    if (spec.is<op::LinearDegenerate>() || spec.is<op::CoefficientLambdaN>()) return false;
    if (const auto* s = std::get_if<op::SupInf>(&spec.kind())) {
        for (const auto& row : s->table)
            for (const auto& member : row)
                if (!is_spectral(member)) return false;
    }
    return true;
}

double evaluate_spectral(const OperatorSpec& spec, const Vector& lambda) {
    const Eigen::Index n = lambda.size();
    return std::visit(
        overloaded{
            [&](const op::WeightedEigenvalues& w) {
                if (static_cast<Eigen::Index>(w.alpha.size()) != n)
                    throw InvalidInput(fmt::format("WeightedEigenvalues: {} weights for dimension {}",
                                                   w.alpha.size(), n));
                double sum = 0.0;
                for (Eigen::Index i = 0; i < n; ++i) sum += w.alpha[static_cast<std::size_t>(i)] * lambda(i);
                return sum;
            },
            [&](const op::LambdaK& l) {
                check_index(l.index, n, "LambdaK");
                return lambda(l.index - 1);
            },
            [&](const op::TruncatedLower& t) {
                check_index(t.k, n, "TruncatedLower");
                return lambda.head(t.k).sum();
            },
            [&](const op::TruncatedUpper& t) {
                check_index(t.k, n, "TruncatedUpper");
                return lambda.tail(t.k).sum();
            },
            [&](const op::MinMax&) { return lambda(0) + lambda(n - 1); },
            [&](const op::NonconvexPair& p) {
                check_index(p.i, n, "NonconvexPair");
                check_index(p.j, n, "NonconvexPair");
                return lambda(p.i - 1) - negative_part(lambda(p.j - 1));
            },
            [&](const op::LinearDegenerate&) -> double {
                throw InvalidInput("LinearDegenerate depends on x; use evaluate_operator");
            },
            [&](const op::CoefficientLambdaN&) -> double {
                throw InvalidInput("CoefficientLambdaN depends on x; use evaluate_operator");
            },
            [&](const op::MongeAmpere&) {
                if (lambda(0) < -kMongeAmpereSlack)
                    throw DomainError(fmt::format("MongeAmpere: lambda_1 = {:.3e} < 0", lambda(0)));
                double det = 1.0;
                for (Eigen::Index i = 0; i < n; ++i) det *= std::max(lambda(i), 0.0);
                return std::pow(det, 1.0 / static_cast<double>(n));
            },
            [&](const op::SupInf& s) {
                double sup = -kInf;
                for (const auto& row : s.table) {
                    double inf = kInf;
                    for (const auto& member : row) inf = std::min(inf, evaluate_spectral(member, lambda));
                    sup = std::max(sup, inf);
                }
                return sup;
            },
        },
        spec.kind());
}

double evaluate_operator(const OperatorSpec& spec, const Point& x, const SymMatrix& X) {
    if (const auto* l = std::get_if<op::LinearDegenerate>(&spec.kind())) {
        const SymMatrix S = l->sigma(x);
        const SymMatrix A = S.transpose() * S;
        const SymMatrix Xs = symmetrize_upper(X);
        if (A.rows() != Xs.rows()) throw InvalidInput("LinearDegenerate: Sigma dimension mismatch");
        if (!Xs.allFinite()) throw InvalidInput("evaluate_operator: non-finite entry");
        return (A * Xs).trace();
    }
    const Vector lambda = eigenvalues_sorted(X);
    if (const auto* c = std::get_if<op::CoefficientLambdaN>(&spec.kind())) {
        return c->a(x) * lambda(lambda.size() - 1);
    }
    if (const auto* s = std::get_if<op::SupInf>(&spec.kind())) {
        double sup = -kInf;
        for (const auto& row : s->table) {
            double inf = kInf;
            for (const auto& member : row) inf = std::min(inf, evaluate_operator(member, x, X));
            sup = std::max(sup, inf);
        }
        return sup;
    }
    return evaluate_spectral(spec, lambda);
}

double ellipticity_constant(const OperatorSpec& spec) {
    return std::visit(overloaded{
                          [](const op::WeightedEigenvalues& w) {
                              return std::accumulate(w.alpha.begin(), w.alpha.end(), 0.0);
                          },
                          [](const op::LambdaK&) { return 1.0; },
                          [](const op::TruncatedLower& t) { return static_cast<double>(t.k); },
                          [](const op::TruncatedUpper& t) { return static_cast<double>(t.k); },
                          [](const op::MinMax&) { return 2.0; },
                          [](const op::NonconvexPair&) { return 1.0; },
                          [](const op::LinearDegenerate& l) { return l.sigma.inf_lambda_max; },
                          [](const op::CoefficientLambdaN& c) { return c.a.lower; },
                          [](const op::MongeAmpere&) { return 1.0; },
                          [](const op::SupInf& s) {
                              double beta = kInf;
                              for (const auto& row : s.table)
                                  for (const auto& member : row) beta = std::min(beta, ellipticity_constant(member));
                              return beta;
                          },
                      },
                      spec.kind());
}

double hessian_weight(const OperatorSpec& spec) {
    return std::visit(overloaded{
                          [](const op::WeightedEigenvalues& w) {
                              return std::accumulate(w.alpha.begin(), w.alpha.end(), 0.0);
                          },
                          [](const op::LambdaK&) { return 1.0; },
                          [](const op::TruncatedLower& t) { return static_cast<double>(t.k); },
                          [](const op::TruncatedUpper& t) { return static_cast<double>(t.k); },
                          [](const op::MinMax&) { return 2.0; },
                          [](const op::NonconvexPair&) { return 2.0; },
                          [](const op::LinearDegenerate& l) { return l.sigma.sup_trace; },
                          [](const op::CoefficientLambdaN& c) { return c.a.upper; },
                          [](const op::MongeAmpere&) { return 1.0; },
                          [](const op::SupInf& s) {
                              double w = 0.0;
                              for (const auto& row : s.table)
                                  for (const auto& member : row) w = std::max(w, hessian_weight(member));
                              return w;
                          },
                      },
                      spec.kind());
}

} // namespace degell
