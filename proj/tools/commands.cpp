// commands.cpp — sea_dyn subcommand implementations

#include "commands.hpp"

#include "seadyn/errors.hpp"
#include "seadyn/integrator.hpp"
#include "seadyn/nosignal.hpp"
#include "seadyn/perception.hpp"
#include "seadyn/presets.hpp"
#include "seadyn/sea.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace seadyn::cli {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::filesystem::path output_dir(const RunConfig& config, const CliOptions& options) {
    std::filesystem::path dir = options.out_dir ? *options.out_dir : config.output.directory;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("output.directory: cannot create '" + dir.string() + "': " + ec.message());
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("output: cannot write '" + path.string() + "'");
    f << content;
    log(LogLevel::info, "wrote " + path.string());
}

json pauli_json(const Matrix& m) {
    const auto p = pauli_components(m);
    return {{"identity", p[0]}, {"x", p[1]}, {"y", p[2]}, {"z", p[3]}};
}

} // namespace

LogLevel log_level_from_env() {
    const char* env = std::getenv("SEA_DYN_LOG");
    if (!env) return LogLevel::warn;
    const std::string v = env;
    if (v == "error") return LogLevel::error;
    if (v == "info") return LogLevel::info;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::warn;
}

void log(LogLevel level, const std::string& message) {
    static const LogLevel threshold = log_level_from_env();
    if (level > threshold) return;
    static const char* names[] = {"error", "warn", "info", "debug"};
    std::cerr << "sea_dyn [" << names[static_cast<int>(level)] << "] " << message << "\n";
}

RunConfig resolve_config(const CliOptions& options) {
    if (options.config_path && options.preset) {
        throw ConfigError("--preset: cannot be combined with --config");
    }
    RunConfig c = options.config_path ? load_config(*options.config_path)
                                      : preset_config(options.preset.value_or("example1"));
    if (options.seed) c.seed = *options.seed;
    if (options.trials) c.nosignal.trials = *options.trials;
    return c;
}

std::string trajectory_csv_header(const CompositeStructure& s) {
    std::string h = "t,trace,entropy,energy";
    for (std::size_t j = 0; j < s.count(); ++j) h += ",energy_" + std::to_string(j);
    h += ",entropy_production,entropy_production_gram";
    for (std::size_t j = 0; j < s.count(); ++j) h += ",dissipator_norm_" + std::to_string(j);
    for (std::size_t j = 0; j < s.count(); ++j) {
        if (s.dim(j) != 2) continue;
        for (const char* axis : {"x", "y", "z"}) h += ",bloch_" + std::to_string(j) + "_" + axis;
    }
    h += ",mutual_information,min_eigenvalue,max_eigenvalue";
    return h;
}

std::string trajectory_columns_help() {
    return "Trajectory CSV columns (J = subsystem index, bloch columns for qubit subsystems only):\n"
           "  t                        time\n"
           "  trace                    Tr rho\n"
           "  entropy                  -k_B Tr rho ln rho\n"
           "  energy                   Tr rho H\n"
           "  energy_J                 Tr rho_J H_J\n"
           "  entropy_production       -sum_J Tr[{D^J, rho_J} (S)^J]\n"
           "  entropy_production_gram  Gram-determinant form of the same rate\n"
           "  dissipator_norm_J        Frobenius norm of {D^J, rho_J}\n"
           "  bloch_J_x, _y, _z        Tr rho_J sigma\n"
           "  mutual_information       sum_J s(rho_J) - s(rho)\n"
           "  min_eigenvalue, max_eigenvalue\n"
           "Header for two qubits:\n  " +
           trajectory_csv_header(CompositeStructure({2, 2})) + "\n";
}

std::string sweep_csv_header(const RunConfig& config) {
    std::string h = "index";
    for (const auto& a : config.sweep.axes) h += "," + a.path;
    for (const auto& l : config.sweep.links) h += "," + l.path;
    h += ",entropy,entropy_production,entropy_production_gram";
    for (std::size_t j = 0; j < config.dims.size(); ++j) h += ",dissipator_norm_" + std::to_string(j);
    h += ",min_eigenvalue";
    if (config.dims == std::vector<std::size_t>{2, 2}) h += ",min_pt_eigenvalue,entanglement";
    if (config.sweep.evolve) h += ",final_entropy,final_dissipator_norm,max_energy_drift,classification";
    return h;
}

std::string sweep_columns_help() {
    return "Sweep CSV columns, one row per grid point in grid order (first axis slowest):\n"
           "  index                    grid index\n"
           "  <axis path>...           value of each swept JSON pointer\n"
           "  <link path>...           value of each linked JSON pointer\n"
           "  entropy, entropy_production, entropy_production_gram   at the initial state\n"
           "  dissipator_norm_J        Frobenius norm of {D^J, rho_J} at the initial state\n"
           "  min_eigenvalue\n"
           "  min_pt_eigenvalue, entanglement   two-qubit layouts only (Peres test on B)\n"
           "  final_entropy, final_dissipator_norm, max_energy_drift, classification\n"
           "                           only when sweep.evolve is true\n";
}

int cmd_evolve(const RunConfig& config, const CliOptions& options, std::ostream& out) {
    const auto model = config.model();
    const auto params = config.params(model);
    const auto rho0 = config.initial_state();
    const auto& s = model.structure();
    log(LogLevel::info, "evolve: dim " + std::to_string(model.dim()) + ", t_final " + fmt(config.integrator.t_final));

    const auto traj = evolve(rho0, model, params, config.integrator);
    const auto& samples = traj.samples;

    std::ostringstream csv;
    csv << trajectory_csv_header(s) << "\n";
    for (const auto& x : samples) {
        csv << fmt(x.t) << "," << fmt(x.trace) << "," << fmt(x.entropy) << "," << fmt(x.energy);
        for (double e : x.local_energies) csv << "," << fmt(e);
        csv << "," << fmt(x.entropy_production) << "," << fmt(x.entropy_production_gram);
        for (double n : x.dissipator_norms) csv << "," << fmt(n);
        for (std::size_t j = 0; j < s.count(); ++j) {
            if (s.dim(j) != 2) continue;
            for (double b : x.bloch[j]) csv << "," << fmt(b);
        }
        csv << "," << fmt(x.mutual_information) << "," << fmt(x.min_eigenvalue) << "," << fmt(x.max_eigenvalue)
            << "\n";
    }

    const auto& first = samples.front();
    const auto& last = samples.back();
    double energy_drift = 0.0, trace_drift = 0.0, min_increment = 0.0, min_production = first.entropy_production;
    std::vector<double> local_drift(s.count(), 0.0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& x = samples[i];
        energy_drift = std::max(energy_drift, std::abs(x.energy - first.energy));
        trace_drift = std::max(trace_drift, std::abs(x.trace - 1.0));
        for (std::size_t j = 0; j < s.count(); ++j) {
            local_drift[j] = std::max(local_drift[j], std::abs(x.local_energies[j] - first.local_energies[j]));
        }
        if (i > 0) min_increment = std::min(min_increment, x.entropy - samples[i - 1].entropy);
        min_production = std::min(min_production, x.entropy_production);
    }
    // Earliest time after which every dissipator norm stays below the fixed-point tolerance.
    json converged = nullptr;
    for (std::size_t i = samples.size(); i-- > 0;) {
        const auto& n = samples[i].dissipator_norms;
        if (*std::max_element(n.begin(), n.end()) >= config.integrator.fixed_point_tol) break;
        converged = samples[i].t;
    }
    double mi_increase = 0.0;
    for (std::size_t i = samples.size() / 2 + 1; i < samples.size(); ++i) {
        mi_increase = std::max(mi_increase, samples[i].mutual_information - samples[i - 1].mutual_information);
    }
    const std::size_t head = std::max<std::size_t>(2, samples.size() / 10);

    json bloch = json::array();
    for (std::size_t j = 0; j < s.count(); ++j) bloch.push_back(s.dim(j) == 2 ? json(last.bloch[j]) : json(nullptr));
    json summary = {
        {"command", "evolve"},
        {"state", to_json(config)["state"]},
        {"t_final", last.t},
        {"samples", samples.size()},
        {"accepted_steps", traj.accepted_steps},
        {"rejected_steps", traj.rejected_steps},
        {"classification", to_string(detect_fixed_point(traj, config.integrator.fixed_point_tol))},
        {"initial_classification",
         to_string(classify_samples(std::span<const Sample>(samples).first(std::min(head, samples.size())),
                                    config.integrator.fixed_point_tol))},
        {"convergence_time", converged},
        {"max_energy_drift", energy_drift},
        {"max_trace_drift", trace_drift},
        {"max_local_energy_drift", local_drift},
        {"min_entropy_increment", min_increment},
        {"entropy_monotone", min_increment >= -1e-9},
        {"min_entropy_production", min_production},
        {"initial", {{"entropy", first.entropy}, {"energy", first.energy}, {"local_energies", first.local_energies},
                     {"mutual_information", first.mutual_information}}},
        {"final", {{"entropy", last.entropy}, {"energy", last.energy}, {"local_energies", last.local_energies},
                   {"dissipator_norms", last.dissipator_norms}, {"bloch", bloch},
                   {"mutual_information", last.mutual_information},
                   {"state", matrix_to_json(traj.final_state().matrix())}}},
        {"max_mutual_information_increase_second_half", mi_increase},
    };

    const auto dir = output_dir(config, options);
    write_file(dir / (config.output.prefix + "_trajectory.csv"), csv.str());
    const std::string text = dump17(summary);
    write_file(dir / (config.output.prefix + "_summary.json"), text);
    out << text;
    return kOk;
}

int cmd_dissipator(const RunConfig& config, const CliOptions& options, std::ostream& out) {
    const auto model = config.model();
    const auto params = config.params(model);
    const auto rho = config.initial_state();
    const auto& s = model.structure();
    const auto ev = evaluate(rho, model, params);

    json subsystems = json::array();
    for (std::size_t j = 0; j < s.count(); ++j) {
        const auto& d = ev.dissipators[j];
        json entry = {{"index", j},
                      {"dissipator", matrix_to_json(d.dissipator)},
                      {"anticommutator", matrix_to_json(d.anticommutator_term)},
                      {"anticommutator_norm", d.anticommutator_term.norm()},
                      {"multipliers", std::vector<double>(d.multipliers.data(), d.multipliers.data() + d.multipliers.size())},
                      {"gram_condition", d.gram_condition},
                      {"gram_rank", d.gram_rank},
                      {"entropy_production", ev.entropy.per_subsystem[j]},
                      {"entropy_production_gram", ev.entropy.per_subsystem_gram[j]}};
        if (s.dim(j) == 2) entry["anticommutator_pauli"] = pauli_json(d.anticommutator_term);
        // Second construction: two-by-two determinant form, only for C = {I, H}.
        if (params.conserved.operators.size() == 2) {
            try {
                const Matrix compact =
                    dissipator_compact(rho, model, j, params.tau[j], 1e-8, params.eps_bln);
                entry["compact"] = {{"dissipator", matrix_to_json(compact)},
                                    {"agreement_residual", (compact - d.dissipator).norm()}};
            } catch (const DegenerateHamiltonianError& e) {
                entry["compact"] = {{"skipped", e.what()}};
            }
        }
        subsystems.push_back(std::move(entry));
    }
    json report = {{"command", "dissipator"},
                   {"state", matrix_to_json(rho.matrix())},
                   {"entropy", params.k_boltzmann * von_neumann_entropy(rho, params.eps_bln)},
                   {"entropy_production", {{"total", ev.entropy.total}, {"total_gram", ev.entropy.total_gram}}},
                   {"rhs_norm", ev.rhs.norm()},
                   {"subsystems", subsystems}};
    const std::string text = dump17(report);
    if (options.out_dir) write_file(output_dir(config, options) / (config.output.prefix + "_dissipator.json"), text);
    out << text;
    return kOk;
}

namespace {

json report_to_json(const CertificationReport& r, bool mutant) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses) {
        json entry = {{"trial", w.trial}, {"seed", w.seed}, {"check", w.check},
                      {"deviation", w.deviation}, {"state", matrix_to_json(w.state)}};
        entry["operation"] = w.operation.size() ? matrix_to_json(w.operation) : json(nullptr);
        witnesses.push_back(std::move(entry));
    }
    return {{"command", "nosignal"},
            {"scenario", r.scenario},
            {"law", mutant ? "mutant" : "sea"},
            {"subsystem", r.subsystem},
            {"trials", r.trials},
            {"seed", r.seed},
            {"seeds", r.seeds},
            {"ensemble", r.ensemble},
            {"tolerance", r.tolerance},
            {"spectrum_tolerance", r.spectrum_tolerance},
            {"max_marginal_deviation", r.max_marginal_deviation},
            {"max_perception_deviation", r.max_perception_deviation},
            {"max_local_rhs_deviation", r.max_local_rhs_deviation},
            {"max_dissipator_deviation", r.max_dissipator_deviation},
            {"max_spectrum_deviation", r.max_spectrum_deviation},
            {"verdict",
             {{"marginal", r.marginal_pass ? "pass" : "fail"},
              {"perception", r.perception_pass ? "pass" : "fail"},
              {"local_rhs", r.local_rhs_pass ? "pass" : "fail"},
              {"dissipator", r.dissipator_pass ? "pass" : "fail"},
              {"spectrum", r.spectrum_pass ? "pass" : "fail"},
              {"overall", r.passed() ? "pass" : "fail"}}},
            {"witnesses", witnesses}};
}

} // namespace

int cmd_nosignal(const RunConfig& config, const CliOptions& options, std::ostream& out) {
    const auto model = config.model();
    const auto params = config.params(model);
    CertificationOptions o;
    o.subsystem = config.nosignal.subsystem;
    o.trials = config.nosignal.trials;
    o.seed = config.seed;
    o.tolerance = config.nosignal.tolerance;
    o.spectrum_tolerance = config.nosignal.spectrum_tolerance;
    o.jobs = std::max(1u, options.jobs);
    const LocalLaw law = options.mutant ? mutant_law() : sea_law();

    CertificationReport report;
    if (config.nosignal.modified) {
        const CompositeModel modified(model.structure(), *config.nosignal.modified, config.hbar);
        const auto modified_params = config.params(modified);
        report = certify_remote_interaction_invariance(model, params, modified, modified_params, o, law);
    } else {
        report = certify_unitary_invariance(model, params, o, law);
    }
    const std::string text = dump17(report_to_json(report, options.mutant));
    if (options.out_dir) write_file(output_dir(config, options) / (config.output.prefix + "_nosignal.json"), text);
    out << text;
    if (!report.passed()) {
        log(LogLevel::warn, "nosignal: certification failed (" + std::to_string(report.witnesses.size()) +
                                " witnesses in the report)");
        return kCertificationFailed;
    }
    return kOk;
}

namespace {

struct GridPoint {
    std::vector<double> axis_values;
    std::vector<double> link_values;
    RunConfig config;
};

json::json_pointer pointer(const std::string& path, const std::string& field) {
    try {
        return json::json_pointer(path);
    } catch (const json::exception& e) {
        throw ConfigError(field + ": '" + path + "' is not a JSON pointer (" + e.what() + ")");
    }
}

std::string sweep_row(std::size_t index, const GridPoint& p) {
    const auto& c = p.config;
    const auto model = c.model();
    const auto params = c.params(model);
    const auto rho = c.initial_state();
    const auto ev = evaluate(rho, model, params);
    std::ostringstream row;
    row << index;
    for (double v : p.axis_values) row << "," << fmt(v);
    for (double v : p.link_values) row << "," << fmt(v);
    row << "," << fmt(c.k_boltzmann * von_neumann_entropy(rho, c.eps_bln)) << "," << fmt(ev.entropy.total) << ","
        << fmt(ev.entropy.total_gram);
    for (const auto& d : ev.dissipators) row << "," << fmt(d.anticommutator_term.norm());
    row << "," << fmt(rho.spectrum().eigenvalues.minCoeff());
    if (c.dims == std::vector<std::size_t>{2, 2}) {
        const double pt = herm_eig(partial_transpose(rho.matrix(), model.structure(), 1)).eigenvalues.minCoeff();
        row << "," << fmt(pt) << "," << to_string(ppt_classify(rho));
    }
    if (c.sweep.evolve) {
        const auto traj = evolve(rho, model, params, c.integrator);
        double drift = 0.0;
        for (const auto& x : traj.samples) drift = std::max(drift, std::abs(x.energy - traj.samples.front().energy));
        const auto& n = traj.samples.back().dissipator_norms;
        row << "," << fmt(traj.samples.back().entropy) << "," << fmt(*std::max_element(n.begin(), n.end())) << ","
            << fmt(drift) << "," << to_string(detect_fixed_point(traj, c.integrator.fixed_point_tol));
    }
    return row.str();
}

} // namespace

int cmd_sweep(const RunConfig& config, const CliOptions& options, std::ostream& out) {
    if (config.sweep.axes.empty()) throw ConfigError("sweep.axes: the grid is empty");
    std::size_t points = 1;
    for (std::size_t k = 0; k < config.sweep.axes.size(); ++k) {
        if (config.sweep.axes[k].values.empty()) {
            throw ConfigError("sweep.axes[" + std::to_string(k) + "].values: the grid is empty");
        }
        points *= config.sweep.axes[k].values.size();
    }

    // Expand the grid (first axis slowest) and validate every point before running any.
    const json base = to_json(config);
    std::vector<GridPoint> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        json doc = base;
        auto& p = grid[i];
        std::size_t rem = i;
        p.axis_values.resize(config.sweep.axes.size());
        for (std::size_t k = config.sweep.axes.size(); k-- > 0;) {
            const auto& axis = config.sweep.axes[k];
            p.axis_values[k] = axis.values[rem % axis.values.size()];
            rem /= axis.values.size();
        }
        for (std::size_t k = 0; k < config.sweep.axes.size(); ++k) {
            const std::string field = "sweep.axes[" + std::to_string(k) + "].path";
            const auto ptr = pointer(config.sweep.axes[k].path, field);
            if (!doc.contains(ptr)) throw ConfigError(field + ": '" + config.sweep.axes[k].path + "' does not exist");
            doc[ptr] = p.axis_values[k];
        }
        for (std::size_t k = 0; k < config.sweep.links.size(); ++k) {
            const auto& link = config.sweep.links[k];
            const std::string field = "sweep.links[" + std::to_string(k) + "]";
            const auto src = pointer(link.source, field + ".source");
            const auto dst = pointer(link.path, field + ".path");
            if (!doc.contains(src) || !doc.at(src).is_number()) {
                throw ConfigError(field + ".source: '" + link.source + "' is not a number in the config");
            }
            if (!doc.contains(dst)) throw ConfigError(field + ".path: '" + link.path + "' does not exist");
            const double v = link.scale * doc.at(src).get<double>() + link.offset;
            doc[dst] = v;
            p.link_values.push_back(v);
        }
        try {
            p.config = parse_config(doc);
        } catch (const ConfigError& e) {
            throw ConfigError("sweep grid point " + std::to_string(i) + ": " + e.what());
        }
    }

    std::vector<std::string> rows(points);
    std::vector<std::exception_ptr> errors(points);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points; i = next++) {
            try {
                rows[i] = sweep_row(i, grid[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(points)));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::string csv = sweep_csv_header(config) + "\n";
    for (const auto& r : rows) csv += r + "\n";
    if (options.out_dir) write_file(output_dir(config, options) / (config.output.prefix + "_sweep.csv"), csv);
    out << csv;
    return kOk;
}

int cmd_dump_config(const RunConfig& config, std::ostream& out) {
    out << dump17(to_json(config));
    return kOk;
}

} // namespace seadyn::cli
