#include "degell/cli.hpp"
#include "degell/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

int main(int argc, char** argv) {
    CLI::App app{"degell: radial solutions, thresholds, barriers and grid solves for degenerate elliptic problems"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"rbar", "print the threshold radius"},
        {"radial", "tabulate a radial profile"},
        {"blowup", "classify the second-zero profile at the origin"},
        {"explicit", "check a zero right-hand side closed form"},
        {"barrier", "build the super and sub barriers of the domain"},
        {"solve", "solve the Dirichlet problem on a 2D grid"},
        {"verify", "run the verification suite"},
        {"sweep", "probe existence over R = factor * Rbar"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "sampling seed");
        sub->add_option("--threads", threads, "solver threads")->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : degell::kExitConfig;
    }

    degell::RunConfig config;
    try {
        if (!config_path.empty()) config = degell::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return degell::kExitConfig;
    }
    config.command = app.get_subcommands().front()->get_name();
    if (out_dir) config.output_dir = *out_dir;
    if (seed) config.seed = *seed;
    if (threads) config.threads = *threads;
    return degell::execute(config, std::cout, std::cerr);
}
