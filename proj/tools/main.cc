#include <iostream>

#include "CLI11.hpp"
#include "commands.h"

int main(int argc, char **argv) {
    using namespace lgsim::cli;

    CLI::App app{"lgsim: Leggett-Garg test with ideal negative-result measurements"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string config_path, out_path, theta;
    std::uint64_t seed = 0;
    double zeta = 0.0;
    std::size_t theta_steps = 361, zeta_steps = 101;

    const auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "Experiment config file (key = value)");
        sub->add_option("--out", out_path, "Write CSV here instead of stdout");
        sub->add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "Monte Carlo seed, overrides the config");
        sub->add_option("--theta", theta, "Rotation angle in radians, or deg:<degrees>");
        sub->add_option("--zeta", zeta, "Venality")->check(CLI::Range(0.0, 1.0));
    };

    auto *run = app.add_subcommand("run", "Simulate the six sub-experiments for one configuration");
    auto *landscape = app.add_subcommand("landscape", "Quantum prediction and bounds over a (theta, zeta) grid");
    auto *verify = app.add_subcommand("verify", "Run the acceptance suite");
    auto *bounds = app.add_subcommand("bounds", "Closed-form prediction and bounds at one (theta, zeta)");
    auto *polytope = app.add_subcommand("mr-polytope", "Macrorealist trajectory polytope and its extremes");
    for (auto *sub : {run, landscape, verify, bounds, polytope}) add_common(sub);
    landscape->add_option("--theta-steps", theta_steps, "Grid points along theta in [0, 2pi]")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
    landscape->add_option("--zeta-steps", zeta_steps, "Grid points along zeta in [0, 0.5]")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const auto given = [](CLI::App *sub, const char *name) { return sub->count(name) > 0; };
    CLI::App *active = app.get_subcommands().front();
    if (given(active, "--config")) opts.config_path = config_path;
    if (given(active, "--out")) opts.out_path = out_path;
    if (given(active, "--seed")) opts.seed = seed;
    if (given(active, "--theta")) opts.theta = theta;
    if (given(active, "--zeta")) opts.zeta = zeta;

    if (active == run) return cmd_run(opts, std::cout, std::cerr);
    if (active == landscape) return cmd_landscape(opts, theta_steps, zeta_steps, std::cout, std::cerr);
    if (active == verify) return cmd_verify(std::cout);
    if (active == bounds) return cmd_bounds(opts, std::cout, std::cerr);
    return cmd_mr_polytope(opts, std::cout, std::cerr);
}
