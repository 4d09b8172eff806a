#include "degell/cli.hpp"
#include "degell/config.hpp"
#include "degell/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace degell;

TEST_CASE("config round trip") {
    const std::string text = R"(
[run]
command = verify
seed = 9
[params]
beta = 2
p = 2.5
M = 0.3
[operator]
kind = LinearDegenerate
sigma = 1 0 0 0.1
[domain]
R = 1.5
centers = 0.3 0; -0.3 0.1
[solver]
h = 0.1
tol = 1e-9
[sweep]
factors = 0.5 0.75
)";
    const RunConfig a = parse_config(text);
    CHECK(a.command == "verify");
    CHECK(a.seed == 9);
    CHECK(a.params.beta == 2.0);
    CHECK(a.centers.size() == 2);
    CHECK(a.centers[1][1] == 0.1);
    CHECK(a.op.sigma.size() == 4);
    const RunConfig b = parse_config(serialize_config(a));
    CHECK(a == b);
    CHECK(serialize_config(b) == serialize_config(a));
    CHECK(parse_config(serialize_config(RunConfig{})) == RunConfig{});
}

TEST_CASE("config rejects bad input") {
    CHECK_THROWS_AS(parse_config("[params]\nbogus = 1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("[nowhere]\nx = 1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("[params]\nbeta = two\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("[params]\nbeta = -1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("[run]\ncommand = fly\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("[solver]\ninit = random\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config("[params]\np = 1\n"), BranchError);
    RunConfig c;
    c.op.alpha = {1.0};
    CHECK_THROWS_AS(make_operator(c), InvalidInput);
    c = RunConfig{};
    c.op.kind = "Unknown";
    CHECK_THROWS_AS(make_operator(c), InvalidInput);
}

TEST_CASE("builders") {
    RunConfig c;
    c.params.beta = 2.0;
    const Problem pb = make_problem(c);
    CHECK(pb.op.name() == "WeightedEigenvalues");
    CHECK(pb.f.upper == -1.0);
    c.ham.kind = "CompactPerturbation";
    CHECK(make_hamiltonian(c).is<ham::CompactPerturbation>());
    c.op.kind = "NonconvexPair";
    c.op.i = 2;
    CHECK(make_operator(c).is<op::NonconvexPair>());
    CHECK(make_controls(c).init == InitialGuess::Zero);
}

TEST_CASE("command layer") {
    RunConfig c;
    c.params.beta = 2.0;
    CHECK(format_rbar(c.params) == "1.00000000000000");
    c.params.beta = 1.0;
    c.params.p = 3.0;
    CHECK(format_rbar(c.params) == "0.529133683989400");
    c.params.M = 0.0;
    CHECK(format_rbar(c.params) == "inf");

    CHECK(exit_code_for(InvalidInput("x")) == kExitConfig);
    CHECK(exit_code_for(BranchError("x")) == kExitConfig);
    CHECK(exit_code_for(NoRootError(1.0, 0.1)) == kExitNumeric);
    CHECK(exit_code_for(NonConvergence("x", {})) == kExitNumeric);

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "degell_unit_cli";
    fs::remove_all(dir);
    RunConfig bad;
    bad.command = "solve";
    bad.solver.h = 0.9;
    bad.output_dir = dir.string();
    std::ostringstream out, err;
    CHECK(execute(bad, out, err) == kExitNumeric);
    CHECK_FALSE(fs::exists(dir));

    RunConfig sub;
    sub.command = "rbar";
    sub.params.p = 0.5;
    CHECK(execute(sub, out, err) == kExitConfig);
    CHECK(err.str().find("sublinear") != std::string::npos);
}

TEST_CASE("solve output is identical across thread counts") {
    RunConfig c;
    c.command = "solve";
    c.params.beta = 2.0;
    c.solver.h = 0.125;
    c.threads = 1;
    const auto one = run_command(c);
    c.threads = 2;
    const auto two = run_command(c);
    REQUIRE(one.files.size() == two.files.size());
    for (std::size_t i = 0; i < one.files.size(); ++i) CHECK(one.files[i] == two.files[i]);
}
