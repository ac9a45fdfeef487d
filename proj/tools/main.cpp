// main.cpp — sea_dyn command-line entry point

#include "commands.hpp"

#include "CLI11.hpp"

#include <iostream>

using namespace seadyn::cli;

int main(int argc, char** argv) {
    CLI::App app{"sea_dyn: steepest-entropy-ascent dynamics of composite quantum systems"};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 ok, 1 certification failed, 2 configuration error, 3 numerical failure.\n"
               "Environment: SEA_DYN_LOG = error | warn | info | debug (default warn), logs go to stderr.\n"
               "Without --config the --preset configuration is used (default example1).");

    CliOptions opts;
    std::string config_path, preset, out_dir;
    std::uint64_t seed = 0;
    std::size_t trials = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--preset", preset, "built-in configuration: example1, example2, bell_diagonal, werner");
        sub->add_option("--seed", seed, "random seed (overrides the config)");
        sub->add_option("--out", out_dir, "output directory (overrides output.directory)");
    };

    auto* evolve = app.add_subcommand("evolve", "integrate the equation of motion from the configured state");
    add_common(evolve);
    evolve->footer(trajectory_columns_help());

    auto* dissipator = app.add_subcommand("dissipator", "report D^J, multipliers and entropy production at the state");
    add_common(dissipator);

    auto* nosignal = app.add_subcommand("nosignal", "certify that operations on the rest leave subsystem J unchanged");
    add_common(nosignal);
    nosignal->add_option("--trials", trials, "number of random trials (overrides nosignal.trials)");
    nosignal->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);
    nosignal->add_flag("--mutant", opts.mutant, "certify the deliberately signaling mutant law (self-test)");

    auto* sweep = app.add_subcommand("sweep", "evaluate every point of the configured parameter grid");
    add_common(sweep);
    sweep->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);
    sweep->footer(sweep_columns_help());

    auto* dump = app.add_subcommand("dump-config", "print the canonical form of the configuration");
    add_common(dump);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    auto* used = app.get_subcommands().front();
    if (used->count("--config")) opts.config_path = config_path;
    if (used->count("--preset")) opts.preset = preset;
    if (used->count("--seed")) opts.seed = seed;
    if (used->count("--out")) opts.out_dir = out_dir;
    if (used == nosignal && nosignal->count("--trials")) opts.trials = trials;

    return guarded([&] {
        const RunConfig config = resolve_config(opts);
        if (used == evolve) return cmd_evolve(config, opts, std::cout);
        if (used == dissipator) return cmd_dissipator(config, opts, std::cout);
        if (used == nosignal) return cmd_nosignal(config, opts, std::cout);
        if (used == sweep) return cmd_sweep(config, opts, std::cout);
        return cmd_dump_config(config, std::cout);
    });
}
