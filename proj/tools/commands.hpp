// commands.hpp — sea_dyn subcommands. Each returns the process exit code:
// 0 success, 1 certification failure, 2 configuration error, 3 numerical failure.

#pragma once

#include "config.hpp"

#include "seadyn/composite.hpp"
#include "seadyn/errors.hpp"

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <optional>
#include <string>

namespace seadyn::cli {

enum ExitCode : int { kOk = 0, kCertificationFailed = 1, kConfigError = 2, kNumericalError = 3 };

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

// SEA_DYN_LOG = error | warn | info | debug (default warn). Messages go to stderr.
LogLevel log_level_from_env();
void log(LogLevel level, const std::string& message);

struct CliOptions {
    std::optional<std::string> config_path;
    std::optional<std::string> preset;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    unsigned jobs{1};
    bool mutant{false};
    std::optional<std::string> out_dir;
};

// Config from --config, else --preset, else the example1 preset.
RunConfig resolve_config(const CliOptions& options);

// Trajectory CSV header for a given layout; bloch columns appear for qubit subsystems only.
std::string trajectory_csv_header(const CompositeStructure& s);
// Sweep CSV header.
std::string sweep_csv_header(const RunConfig& config);

// Column documentation shown by --help.
std::string trajectory_columns_help();
std::string sweep_columns_help();

// Writes <out>/<prefix>_trajectory.csv and <out>/<prefix>_summary.json; the summary also goes to `out`.
int cmd_evolve(const RunConfig& config, const CliOptions& options, std::ostream& out);
// JSON report of D^J, multipliers and entropy production at the initial state.
int cmd_dissipator(const RunConfig& config, const CliOptions& options, std::ostream& out);
// Certification report JSON; exit 0 iff every check passes.
int cmd_nosignal(const RunConfig& config, const CliOptions& options, std::ostream& out);
// One CSV row per grid point in grid order; also written to <out>/<prefix>_sweep.csv when --out is set.
int cmd_sweep(const RunConfig& config, const CliOptions& options, std::ostream& out);
// Canonical configuration JSON.
int cmd_dump_config(const RunConfig& config, std::ostream& out);

// Runs `fn`, mapping ConfigError to exit 2 and every other failure to exit 3.
template <class Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        log(LogLevel::error, std::string("configuration error: ") + e.what());
        return kConfigError;
    } catch (const NumericalError& e) {
        log(LogLevel::error, std::string("numerical failure: ") + e.what());
        return kNumericalError;
    } catch (const std::exception& e) {
        log(LogLevel::error, std::string("error: ") + e.what());
        return kNumericalError;
    }
}

} // namespace seadyn::cli
