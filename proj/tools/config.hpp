// config.hpp — JSON run configuration: parsing with field-named errors, canonical
// serialization and construction of the model, SEA parameters and initial state.

#pragma once

#include "seadyn/composite.hpp"
#include "seadyn/integrator.hpp"
#include "seadyn/sea.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace seadyn::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct StateSpec {
    enum class Kind { matrix, pauli, preset, random };
    Kind kind{Kind::preset};
    Matrix matrix;             // kind == matrix
    PauliState2Q pauli;        // kind == pauli
    std::string preset{"maximally_mixed"};  // example1, example2, bell_diagonal, werner, maximally_mixed
    double a{0.0};
    double b{0.0};
    double w{0.75};
    std::array<double, 3> c{};
    std::size_t rank{0};       // kind == random; 0 means full rank
    std::uint64_t seed{0};
};

struct OutputConfig {
    std::string directory{"."};
    std::string prefix{"sea_dyn"};
};

struct NosignalConfig {
    std::size_t subsystem{0};
    std::size_t trials{200};
    double tolerance{1e-9};
    double spectrum_tolerance{1e-10};
    // When present the remote-interaction scenario compares against this Hamiltonian.
    std::optional<HamiltonianSpec> modified;
};

// One grid axis: a JSON pointer into the configuration and the values it takes.
struct SweepAxis {
    std::string path;
    std::vector<double> values;
};

// path = scale · value(source) + offset at every grid point.
struct SweepLink {
    std::string path;
    std::string source;
    double scale{1.0};
    double offset{0.0};
};

struct SweepConfig {
    std::vector<SweepAxis> axes;
    std::vector<SweepLink> links;
    bool evolve{false};
};

struct RunConfig {
    int schema_version{kSchemaVersion};
    std::vector<std::size_t> dims{2, 2};
    HamiltonianSpec hamiltonian;
    double hbar{1.0};
    StateSpec state;
    std::vector<double> tau;
    std::vector<Matrix> extra_conserved;
    double gram_rcond{1e-10};
    double eps_bln{kEpsBln};
    double k_boltzmann{1.0};
    IntegratorConfig integrator;
    OutputConfig output;
    NosignalConfig nosignal;
    SweepConfig sweep;
    std::uint64_t seed{0};

    CompositeModel model() const;
    SeaParams params(const CompositeModel& model) const;
    DensityMatrix initial_state() const;
    // Builds every object once so that all validation errors surface before a run.
    void validate() const;
};

// Throws ConfigError naming the offending field (for example "hamiltonian.locals[1]").
RunConfig parse_config(const json& doc);
RunConfig load_config(const std::string& path);
json to_json(const RunConfig& config);

// Ready-to-run configurations: example1, example2, bell_diagonal, werner.
RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Matrices are nested arrays of [re, im] pairs.
json matrix_to_json(const Matrix& m);

// JSON text with every number printed at 17 significant digits.
std::string dump17(const json& doc, int indent = 2);

} // namespace seadyn::cli
