#include "degell/config.hpp"

#include "degell/errors.hpp"

#include <Eigen/Eigenvalues>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace degell {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"run", {"command", "seed", "threads"}},
        {"params", {"beta", "b", "c", "d", "p", "M", "dimension"}},
        {"operator", {"kind", "alpha", "index", "k", "i", "j", "a", "sigma"}},
        {"hamiltonian", {"kind", "A", "bump_amplitude", "bump_radius"}},
        {"domain", {"R", "centers"}},
        {"forcing", {"value"}},
        {"solver", {"h", "K", "tau", "tol", "max_iter", "init"}},
        {"radial", {"branch", "R", "nodes", "r_min"}},
        {"explicit", {"kind", "p", "R", "N", "radii"}},
        {"sweep", {"factors", "probe_nodes"}},
        {"output", {"dir"}},
    };
    return s;
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) throw InvalidInput(fmt::format("config: {}: '{}' is not a number", key, tok));
        out.push_back(v);
    }
    return out;
}

std::string format_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += fmt::format("{}{:.17g}", i ? " " : "", v[i]);
    return out;
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    template <class T>
    void get(const std::string& key, T& target) const {
        const auto node = tree_.get_child_optional(pt::ptree::path_type(key, '.'));
        if (!node) return;
        const std::string raw = node->data();
        if constexpr (std::is_same_v<T, std::string>) {
            target = raw;
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
            target = parse_list(raw, key);
        } else {
            std::istringstream in(raw);
            T value{};
            in >> value;
            std::string rest;
            if (in.fail() || (in >> rest)) throw InvalidInput(fmt::format("config: {} = '{}' is not a valid value", key, raw));
            target = value;
        }
    }

private:
    const pt::ptree& tree_;
};

} // namespace

RunConfig parse_config(const std::string& text) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw InvalidInput(fmt::format("config: line {}: {}", e.line(), e.message()));
    }
    for (const auto& [section, body] : tree) {
        const auto it = schema().find(section);
        if (it == schema().end()) throw InvalidInput("config: unknown section [" + section + "]");
        if (!body.data().empty()) throw InvalidInput("config: key outside a section: " + section);
        for (const auto& [key, value] : body) {
            if (!it->second.count(key)) throw InvalidInput(fmt::format("config: unknown key '{}' in [{}]", key, section));
        }
    }

    RunConfig c;
    const Reader r(tree);
    r.get("run.command", c.command);
    r.get("run.seed", c.seed);
    r.get("run.threads", c.threads);
    r.get("params.beta", c.params.beta);
    r.get("params.b", c.params.b);
    r.get("params.c", c.params.c);
    r.get("params.d", c.params.d);
    r.get("params.p", c.params.p);
    r.get("params.M", c.params.M);
    r.get("params.dimension", c.dimension);
    r.get("operator.kind", c.op.kind);
    r.get("operator.alpha", c.op.alpha);
    r.get("operator.index", c.op.index);
    r.get("operator.k", c.op.k);
    r.get("operator.i", c.op.i);
    r.get("operator.j", c.op.j);
    r.get("operator.a", c.op.a);
    r.get("operator.sigma", c.op.sigma);
    r.get("hamiltonian.kind", c.ham.kind);
    r.get("hamiltonian.A", c.ham.A);
    r.get("hamiltonian.bump_amplitude", c.ham.bump_amplitude);
    r.get("hamiltonian.bump_radius", c.ham.bump_radius);
    r.get("domain.R", c.domain_radius);
    if (auto centers = tree.get_optional<std::string>(pt::ptree::path_type("domain.centers", '.'))) {
        c.centers.clear();
        std::istringstream in(*centers);
        std::string item;
        while (std::getline(in, item, ';')) {
            auto v = parse_list(item, "domain.centers");
            if (!v.empty()) c.centers.push_back(std::move(v));
        }
    }
    r.get("forcing.value", c.forcing);
    r.get("solver.h", c.solver.h);
    r.get("solver.K", c.solver.K);
    r.get("solver.tau", c.solver.tau);
    r.get("solver.tol", c.solver.tol);
    r.get("solver.max_iter", c.solver.max_iter);
    r.get("solver.init", c.solver.init);
    r.get("radial.branch", c.radial.branch);
    r.get("radial.R", c.radial.R);
    r.get("radial.nodes", c.radial.nodes);
    r.get("radial.r_min", c.radial.r_min);
    r.get("explicit.kind", c.explicit_solution.kind);
    r.get("explicit.p", c.explicit_solution.p);
    r.get("explicit.R", c.explicit_solution.R);
    r.get("explicit.N", c.explicit_solution.N);
    r.get("explicit.radii", c.explicit_solution.radii);
    r.get("sweep.factors", c.sweep.factors);
    r.get("sweep.probe_nodes", c.sweep.probe_nodes);
    r.get("output.dir", c.output_dir);

    static const std::set<std::string> commands{"rbar", "radial", "blowup", "explicit", "barrier", "solve", "verify", "sweep"};
    if (!commands.count(c.command)) throw InvalidInput("config: unknown command '" + c.command + "'");
    if (c.threads < 1) throw InvalidInput("config: run.threads must be >= 1");
    if (c.dimension < 2 || c.dimension > 8) throw InvalidInput("config: params.dimension must be in [2, 8]");
    if (c.solver.init != "zero" && c.solver.init != "barrier") throw InvalidInput("config: solver.init must be zero or barrier");
    if (!(c.solver.h > 0.0) || c.solver.K < 4 || c.solver.max_iter < 1 || !(c.solver.tol > 0.0) || c.solver.tau < 0.0)
        throw InvalidInput("config: invalid [solver] controls");
    if (c.radial.nodes < 64 || !(c.radial.R > 0.0)) throw InvalidInput("config: invalid [radial] settings");
    if (c.sweep.probe_nodes < 1 || c.sweep.factors.empty()) throw InvalidInput("config: invalid [sweep] settings");
    if (!std::isfinite(c.forcing)) throw InvalidInput("config: forcing.value must be finite");
    c.params.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
    std::string centers;
    for (std::size_t i = 0; i < c.centers.size(); ++i) centers += (i ? "; " : "") + format_list(c.centers[i]);
    std::string out;
    out += fmt::format("[run]\ncommand = {}\nseed = {}\nthreads = {}\n\n", c.command, c.seed, c.threads);
    out += fmt::format("[params]\nbeta = {:.17g}\nb = {:.17g}\nc = {:.17g}\nd = {:.17g}\np = {:.17g}\nM = {:.17g}\ndimension = {}\n\n",
                       c.params.beta, c.params.b, c.params.c, c.params.d, c.params.p, c.params.M, c.dimension);
    out += fmt::format("[operator]\nkind = {}\nalpha = {}\nindex = {}\nk = {}\ni = {}\nj = {}\na = {:.17g}\nsigma = {}\n\n",
                       c.op.kind, format_list(c.op.alpha), c.op.index, c.op.k, c.op.i, c.op.j, c.op.a, format_list(c.op.sigma));
    out += fmt::format("[hamiltonian]\nkind = {}\nA = {}\nbump_amplitude = {:.17g}\nbump_radius = {:.17g}\n\n", c.ham.kind,
                       format_list(c.ham.A), c.ham.bump_amplitude, c.ham.bump_radius);
    out += fmt::format("[domain]\nR = {:.17g}\ncenters = {}\n\n", c.domain_radius, centers);
    out += fmt::format("[forcing]\nvalue = {:.17g}\n\n", c.forcing);
    out += fmt::format("[solver]\nh = {:.17g}\nK = {}\ntau = {:.17g}\ntol = {:.17g}\nmax_iter = {}\ninit = {}\n\n", c.solver.h,
                       c.solver.K, c.solver.tau, c.solver.tol, c.solver.max_iter, c.solver.init);
    out += fmt::format("[radial]\nbranch = {}\nR = {:.17g}\nnodes = {}\nr_min = {:.17g}\n\n", c.radial.branch, c.radial.R,
                       c.radial.nodes, c.radial.r_min);
    out += fmt::format("[explicit]\nkind = {}\np = {:.17g}\nR = {:.17g}\nN = {}\nradii = {}\n\n", c.explicit_solution.kind,
                       c.explicit_solution.p, c.explicit_solution.R, c.explicit_solution.N,
                       format_list(c.explicit_solution.radii));
    out += fmt::format("[sweep]\nfactors = {}\nprobe_nodes = {}\n\n", format_list(c.sweep.factors), c.sweep.probe_nodes);
    out += fmt::format("[output]\ndir = {}\n", c.output_dir);
    return out;
}

namespace {

SymMatrix square(const std::vector<double>& v, int n, const char* what) {
    if (static_cast<int>(v.size()) != n * n) throw InvalidInput(fmt::format("config: {} needs {} entries", what, n * n));
    SymMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = v[static_cast<std::size_t>(i) * n + j];
    return m;
}

} // namespace

OperatorSpec make_operator(const RunConfig& c) {
    const auto& o = c.op;
    const int n = c.dimension;
    if (o.kind == "WeightedEigenvalues") {
        if (static_cast<int>(o.alpha.size()) != n) throw InvalidInput("config: operator.alpha needs one weight per dimension");
        return OperatorSpec(op::WeightedEigenvalues{o.alpha});
    }
    auto in_range = [&](int v, const char* what) {
        if (v < 1 || v > n) throw InvalidInput(fmt::format("config: operator.{} must be in [1, {}]", what, n));
        return v;
    };
    if (o.kind == "LambdaK") return OperatorSpec(op::LambdaK{in_range(o.index, "index")});
    if (o.kind == "TruncatedLower") return OperatorSpec(op::TruncatedLower{in_range(o.k, "k")});
    if (o.kind == "TruncatedUpper") return OperatorSpec(op::TruncatedUpper{in_range(o.k, "k")});
    if (o.kind == "MinMax") return OperatorSpec(op::MinMax{});
    if (o.kind == "NonconvexPair") return OperatorSpec(op::NonconvexPair{in_range(o.i, "i"), in_range(o.j, "j")});
    if (o.kind == "CoefficientLambdaN") {
        if (!(o.a > 0.0)) throw InvalidInput("config: operator.a must be > 0");
        return OperatorSpec(op::CoefficientLambdaN{ScalarField::constant(o.a)});
    }
    if (o.kind == "LinearDegenerate") {
        const SymMatrix S = square(o.sigma, n, "operator.sigma");
        const SymMatrix A = S.transpose() * S;
        MatrixField field;
        field.eval = [S](const Point&) { return S; };
        const Vector ev = Eigen::SelfAdjointEigenSolver<SymMatrix>(A, Eigen::EigenvaluesOnly).eigenvalues();
        field.inf_lambda_max = ev.maxCoeff();
        field.sup_trace = A.trace();
        field.positive_definite = ev.minCoeff() > 0.0;
        return OperatorSpec(op::LinearDegenerate{field});
    }
    if (o.kind == "MongeAmpere") return OperatorSpec(op::MongeAmpere{});
    throw InvalidInput("config: unknown operator.kind '" + o.kind + "'");
}

HamiltonianSpec make_polynomial_bump_hamiltonian(double p, double amplitude, double radius) {
    if (!(radius > 0.0) || !(amplitude >= 0.0)) throw InvalidInput("bump: radius must be > 0 and amplitude >= 0");
    BumpNorms norms;
    norms.sup = amplitude;
    norms.grad_sup = 8.0 * amplitude / (3.0 * std::sqrt(3.0) * radius);
    norms.support_radius = radius;
    auto bump = [amplitude, radius](const Vector& xi) {
        const double t2 = xi.squaredNorm() / (radius * radius);
        return t2 >= 1.0 ? 0.0 : amplitude * (1.0 - t2) * (1.0 - t2);
    };
    return make_compact_perturbation(p, bump, norms);
}

HamiltonianSpec make_hamiltonian(const RunConfig& c) {
    const auto& h = c.ham;
    if (h.kind == "PowerNorm") return HamiltonianSpec(ham::PowerNorm{c.params.b, c.params.p});
    if (h.kind == "AnisotropicPower") return HamiltonianSpec(ham::AnisotropicPower{square(h.A, c.dimension, "hamiltonian.A"), c.params.p, c.params.b});
    if (h.kind == "CompactPerturbation") return make_polynomial_bump_hamiltonian(c.params.p, h.bump_amplitude, h.bump_radius);
    throw InvalidInput("config: unknown hamiltonian.kind '" + h.kind + "'");
}

ConvexDomain make_domain(const RunConfig& c) {
    std::vector<Point> ys;
    for (const auto& y : c.centers) {
        if (static_cast<int>(y.size()) != c.dimension) throw InvalidInput("config: domain center of wrong dimension");
        ys.push_back(Eigen::Map<const Point>(y.data(), static_cast<Eigen::Index>(y.size())));
    }
    return ConvexDomain(c.domain_radius, std::move(ys));
}

Problem make_problem(const RunConfig& c) {
    return Problem{make_operator(c), make_hamiltonian(c), c.params, make_domain(c), ScalarField::constant(c.forcing)};
}

SolveControls make_controls(const RunConfig& c) {
    SolveControls s;
    s.tau = c.solver.tau;
    s.tol = c.solver.tol;
    s.max_iter = c.solver.max_iter;
    s.threads = c.threads;
    s.init = c.solver.init == "barrier" ? InitialGuess::Barrier : InitialGuess::Zero;
    return s;
}

} // namespace degell
