// config.cpp — run configuration parsing and serialization

#include "config.hpp"

#include "seadyn/errors.hpp"
#include "seadyn/presets.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace seadyn::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
        if (!ok.count(key)) fail(path.empty() ? key : path + "." + key, "unknown field");
    }
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

std::string index(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

double number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    return x;
}

double number_or(const json& obj, const char* key, const std::string& path, double fallback) {
    return obj.contains(key) ? number(obj.at(key), join(path, key)) : fallback;
}

std::size_t count(const json& v, const std::string& path) {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(path, "expected a nonnegative integer");
    return v.get<std::size_t>();
}

std::size_t count_or(const json& obj, const char* key, const std::string& path, std::size_t fallback) {
    return obj.contains(key) ? count(obj.at(key), join(path, key)) : fallback;
}

std::uint64_t seed_value(const json& v, const std::string& path) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        fail(path, "expected a nonnegative integer seed");
    }
    return v.get<std::uint64_t>();
}

std::string text(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

std::array<double, 3> triple(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 3) fail(path, "expected an array of 3 numbers");
    return {number(v[0], index(path, 0)), number(v[1], index(path, 1)), number(v[2], index(path, 2))};
}

Matrix pauli(char c, const std::string& path) {
    switch (std::tolower(static_cast<unsigned char>(c))) {
    case 'i': return identity(2);
    case 'x': return sigma_x();
    case 'y': return sigma_y();
    case 'z': return sigma_z();
    default: fail(path, std::string("unknown Pauli letter '") + c + "'");
    }
}

Matrix generator(const std::string& name, std::size_t dim, const json& options, const std::string& path) {
    if (name == "identity") return identity(dim);
    if (name == "zero") return Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    if (name == "random_hermitian") {
        const std::uint64_t seed = options.contains("seed") ? seed_value(options.at("seed"), join(path, "seed")) : 0;
        return random_hermitian(dim, seed);
    }
    if (name == "sigma_x" || name == "sigma_y" || name == "sigma_z") {
        if (dim != 2) fail(path, name + " needs a 2-dimensional space, got " + std::to_string(dim));
        return name == "sigma_x" ? sigma_x() : name == "sigma_y" ? sigma_y() : sigma_z();
    }
    fail(path, "unknown generator '" + name + "'");
}

// Matrix on a space of dimension `dim`; `factor_dims` enables Pauli strings (all factors 2).
Matrix parse_matrix(const json& v, std::size_t dim, const std::vector<std::size_t>& factor_dims,
                    const std::string& path) {
    if (v.is_string()) return generator(v.get<std::string>(), dim, json::object(), path);
    if (v.is_object()) {
        if (v.contains("pauli_terms")) {
            check_keys(v, path, {"pauli_terms"});
            for (auto d : factor_dims) {
                if (d != 2) fail(join(path, "pauli_terms"), "Pauli strings need every subsystem to be a qubit");
            }
            const auto& terms = v.at("pauli_terms");
            if (!terms.is_array()) fail(join(path, "pauli_terms"), "expected an array");
            const auto n = static_cast<Eigen::Index>(dim);
            Matrix out = Matrix::Zero(n, n);
            for (std::size_t k = 0; k < terms.size(); ++k) {
                const std::string tp = index(join(path, "pauli_terms"), k);
                check_keys(terms[k], tp, {"ops", "coeff"});
                const std::string ops = text(terms[k].at("ops"), join(tp, "ops"));
                if (ops.size() != factor_dims.size()) {
                    fail(join(tp, "ops"), "expected " + std::to_string(factor_dims.size()) + " letters");
                }
                Matrix term = Matrix::Identity(1, 1);
                for (char c : ops) term = tensor(term, pauli(c, join(tp, "ops")));
                out += number(terms[k].at("coeff"), join(tp, "coeff")) * term;
            }
            return out;
        }
        check_keys(v, path, {"generator", "scale", "seed"});
        if (!v.contains("generator")) fail(path, "expected 'generator' or 'pauli_terms'");
        const double scale = number_or(v, "scale", path, 1.0);
        return scale * generator(text(v.at("generator"), join(path, "generator")), dim, v, path);
    }
    if (!v.is_array() || v.size() != dim) {
        fail(path, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                       " matrix (rows of [re, im] pairs), a generator name or an object");
    }
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix out(n, n);
    for (std::size_t r = 0; r < dim; ++r) {
        const std::string rp = index(path, r);
        if (!v[r].is_array() || v[r].size() != dim) fail(rp, "expected " + std::to_string(dim) + " entries");
        for (std::size_t c = 0; c < dim; ++c) {
            const auto& e = v[r][c];
            const std::string ep = index(rp, c);
            if (e.is_number()) {
                out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number(e, ep);
            } else if (e.is_array() && e.size() == 2) {
                out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    cplx(number(e[0], index(ep, 0)), number(e[1], index(ep, 1)));
            } else {
                fail(ep, "expected [re, im] or a real number");
            }
        }
    }
    return out;
}

HamiltonianSpec parse_hamiltonian(const json& v, const std::vector<std::size_t>& dims,
                                  const std::string& path) {
    check_keys(v, path, {"locals", "interaction"});
    if (!v.contains("locals")) fail(join(path, "locals"), "missing");
    const auto& locals = v.at("locals");
    if (!locals.is_array() || locals.size() != dims.size()) {
        fail(join(path, "locals"), "expected one matrix per subsystem (" + std::to_string(dims.size()) + ")");
    }
    HamiltonianSpec spec;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        spec.locals.push_back(parse_matrix(locals[j], dims[j], {dims[j]}, index(join(path, "locals"), j)));
    }
    if (v.contains("interaction") && !v.at("interaction").is_null()) {
        std::size_t total = 1;
        for (auto d : dims) total *= d;
        spec.interaction = parse_matrix(v.at("interaction"), total, dims, join(path, "interaction"));
    }
    return spec;
}

StateSpec parse_state(const json& v, const std::string& path) {
    StateSpec s;
    if (!v.is_object()) fail(path, "expected an object");
    if (v.contains("matrix")) {
        check_keys(v, path, {"matrix"});
        s.kind = StateSpec::Kind::matrix;
        const auto& m = v.at("matrix");
        if (!m.is_array()) fail(join(path, "matrix"), "expected a matrix");
        s.matrix = parse_matrix(m, m.size(), {}, join(path, "matrix"));
        return s;
    }
    if (v.contains("pauli")) {
        check_keys(v, path, {"pauli"});
        s.kind = StateSpec::Kind::pauli;
        const std::string pp = join(path, "pauli");
        const auto& p = v.at("pauli");
        check_keys(p, pp, {"a", "b", "c"});
        if (p.contains("a")) s.pauli.a = triple(p.at("a"), join(pp, "a"));
        if (p.contains("b")) s.pauli.b = triple(p.at("b"), join(pp, "b"));
        if (p.contains("c")) s.pauli.c = triple(p.at("c"), join(pp, "c"));
        return s;
    }
    if (v.contains("random")) {
        check_keys(v, path, {"random"});
        s.kind = StateSpec::Kind::random;
        const std::string rp = join(path, "random");
        const auto& r = v.at("random");
        check_keys(r, rp, {"rank", "seed"});
        s.rank = count_or(r, "rank", rp, 0);
        s.seed = r.contains("seed") ? seed_value(r.at("seed"), join(rp, "seed")) : 0;
        return s;
    }
    if (!v.contains("preset")) fail(path, "expected one of 'preset', 'matrix', 'pauli', 'random'");
    s.kind = StateSpec::Kind::preset;
    s.preset = text(v.at("preset"), join(path, "preset"));
    if (s.preset == "example1" || s.preset == "example2") {
        check_keys(v, path, {"preset", "a", "b"});
        s.a = number_or(v, "a", path, 0.0);
        s.b = number_or(v, "b", path, 0.0);
    } else if (s.preset == "bell_diagonal") {
        check_keys(v, path, {"preset", "c"});
        if (!v.contains("c")) fail(join(path, "c"), "missing");
        s.c = triple(v.at("c"), join(path, "c"));
    } else if (s.preset == "werner") {
        check_keys(v, path, {"preset", "w"});
        s.w = number_or(v, "w", path, 0.75);
    } else if (s.preset == "maximally_mixed") {
        check_keys(v, path, {"preset"});
    } else {
        fail(join(path, "preset"),
             "unknown preset '" + s.preset + "' (example1, example2, bell_diagonal, werner, maximally_mixed)");
    }
    return s;
}

Stepper parse_stepper(const json& v, const std::string& path) {
    const auto name = text(v, path);
    if (name == "dormand-prince") return Stepper::dormand_prince;
    if (name == "rk4") return Stepper::rk4;
    fail(path, "unknown stepper '" + name + "' (dormand-prince, rk4)");
}

IntegratorConfig parse_integrator(const json& v, const std::string& path) {
    check_keys(v, path,
               {"stepper", "dt_initial", "rel_tol", "abs_tol", "t_final", "dt_min", "dt_max", "max_steps",
                "projection_interval", "rank_floor", "clip_tol", "fixed_point_tol", "state_stride"});
    IntegratorConfig c;
    if (v.contains("stepper")) c.stepper = parse_stepper(v.at("stepper"), join(path, "stepper"));
    c.dt_initial = number_or(v, "dt_initial", path, c.dt_initial);
    c.rel_tol = number_or(v, "rel_tol", path, c.rel_tol);
    c.abs_tol = number_or(v, "abs_tol", path, c.abs_tol);
    c.t_final = number_or(v, "t_final", path, c.t_final);
    c.dt_min = number_or(v, "dt_min", path, c.dt_min);
    c.dt_max = number_or(v, "dt_max", path, c.dt_max);
    c.max_steps = count_or(v, "max_steps", path, c.max_steps);
    c.projection_interval = count_or(v, "projection_interval", path, c.projection_interval);
    c.rank_floor = number_or(v, "rank_floor", path, c.rank_floor);
    c.clip_tol = number_or(v, "clip_tol", path, c.clip_tol);
    c.fixed_point_tol = number_or(v, "fixed_point_tol", path, c.fixed_point_tol);
    c.state_stride = count_or(v, "state_stride", path, c.state_stride);
    return c;
}

SweepConfig parse_sweep(const json& v, const std::string& path) {
    check_keys(v, path, {"axes", "links", "evolve"});
    SweepConfig s;
    if (v.contains("evolve")) {
        if (!v.at("evolve").is_boolean()) fail(join(path, "evolve"), "expected true or false");
        s.evolve = v.at("evolve").get<bool>();
    }
    if (v.contains("axes")) {
        const auto& axes = v.at("axes");
        if (!axes.is_array()) fail(join(path, "axes"), "expected an array");
        for (std::size_t k = 0; k < axes.size(); ++k) {
            const std::string ap = index(join(path, "axes"), k);
            check_keys(axes[k], ap, {"path", "values", "range"});
            SweepAxis axis;
            if (!axes[k].contains("path")) fail(join(ap, "path"), "missing");
            axis.path = text(axes[k].at("path"), join(ap, "path"));
            if (axes[k].contains("values")) {
                const auto& vals = axes[k].at("values");
                if (!vals.is_array()) fail(join(ap, "values"), "expected an array");
                for (std::size_t i = 0; i < vals.size(); ++i) {
                    axis.values.push_back(number(vals[i], index(join(ap, "values"), i)));
                }
            } else if (axes[k].contains("range")) {
                const std::string rp = join(ap, "range");
                const auto& r = axes[k].at("range");
                check_keys(r, rp, {"start", "stop", "step"});
                const double start = number(r.at("start"), join(rp, "start"));
                const double stop = number(r.at("stop"), join(rp, "stop"));
                const double step = number(r.at("step"), join(rp, "step"));
                if (!(step > 0.0)) fail(join(rp, "step"), "must be positive");
                if (stop >= start) {
                    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
                    for (std::size_t i = 0; i <= n; ++i) axis.values.push_back(start + static_cast<double>(i) * step);
                }
            } else {
                fail(ap, "expected 'values' or 'range'");
            }
            s.axes.push_back(std::move(axis));
        }
    }
    if (v.contains("links")) {
        const auto& links = v.at("links");
        if (!links.is_array()) fail(join(path, "links"), "expected an array");
        for (std::size_t k = 0; k < links.size(); ++k) {
            const std::string lp = index(join(path, "links"), k);
            check_keys(links[k], lp, {"path", "source", "scale", "offset"});
            SweepLink link;
            if (!links[k].contains("path") || !links[k].contains("source")) fail(lp, "needs 'path' and 'source'");
            link.path = text(links[k].at("path"), join(lp, "path"));
            link.source = text(links[k].at("source"), join(lp, "source"));
            link.scale = number_or(links[k], "scale", lp, 1.0);
            link.offset = number_or(links[k], "offset", lp, 0.0);
            s.links.push_back(std::move(link));
        }
    }
    return s;
}

json hamiltonian_to_json(const HamiltonianSpec& h) {
    json out;
    out["locals"] = json::array();
    for (const auto& m : h.locals) out["locals"].push_back(matrix_to_json(m));
    out["interaction"] = h.interaction.size() == 0 ? json(nullptr) : matrix_to_json(h.interaction);
    return out;
}

json state_to_json(const StateSpec& s) {
    switch (s.kind) {
    case StateSpec::Kind::matrix: return {{"matrix", matrix_to_json(s.matrix)}};
    case StateSpec::Kind::pauli: return {{"pauli", {{"a", s.pauli.a}, {"b", s.pauli.b}, {"c", s.pauli.c}}}};
    case StateSpec::Kind::random: return {{"random", {{"rank", s.rank}, {"seed", s.seed}}}};
    case StateSpec::Kind::preset: break;
    }
    json out{{"preset", s.preset}};
    if (s.preset == "example1" || s.preset == "example2") {
        out["a"] = s.a;
        out["b"] = s.b;
    } else if (s.preset == "bell_diagonal") {
        out["c"] = s.c;
    } else if (s.preset == "werner") {
        out["w"] = s.w;
    }
    return out;
}

void require_two_qubits(const std::vector<std::size_t>& dims, const std::string& preset) {
    if (dims != std::vector<std::size_t>{2, 2}) {
        throw ConfigError("state.preset: " + preset + " needs structure.dims = [2, 2]");
    }
}

} // namespace

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

RunConfig parse_config(const json& doc) {
    check_keys(doc, "", {"schema_version", "structure", "hamiltonian", "hbar", "state", "sea", "integrator",
                         "output", "nosignal", "sweep", "seed"});
    RunConfig c;
    if (!doc.contains("schema_version")) fail("schema_version", "missing");
    if (!doc.at("schema_version").is_number_integer() || doc.at("schema_version").get<int>() != kSchemaVersion) {
        fail("schema_version", "unsupported (expected " + std::to_string(kSchemaVersion) + ")");
    }

    if (!doc.contains("structure")) fail("structure", "missing");
    check_keys(doc.at("structure"), "structure", {"dims"});
    const auto& dims = doc.at("structure").at("dims");
    if (!dims.is_array() || dims.empty()) fail("structure.dims", "expected a nonempty array of positive integers");
    c.dims.clear();
    for (std::size_t j = 0; j < dims.size(); ++j) {
        const std::size_t d = count(dims[j], index("structure.dims", j));
        if (d == 0) fail(index("structure.dims", j), "must be positive");
        c.dims.push_back(d);
    }
    (void)CompositeStructure(c.dims);  // range checks with field-named messages

    if (!doc.contains("hamiltonian")) fail("hamiltonian", "missing");
    c.hamiltonian = parse_hamiltonian(doc.at("hamiltonian"), c.dims, "hamiltonian");
    c.hbar = number_or(doc, "hbar", "", 1.0);
    if (!(c.hbar > 0.0)) fail("hbar", "must be positive");

    if (doc.contains("state")) c.state = parse_state(doc.at("state"), "state");

    c.tau.assign(c.dims.size(), 1.0);
    if (doc.contains("sea")) {
        const auto& sea = doc.at("sea");
        check_keys(sea, "sea", {"tau", "extra_conserved", "gram_rcond", "eps_bln", "k_boltzmann"});
        if (sea.contains("tau")) {
            const auto& t = sea.at("tau");
            if (t.is_number()) {
                c.tau.assign(c.dims.size(), number(t, "sea.tau"));
            } else if (t.is_array() && t.size() == c.dims.size()) {
                for (std::size_t j = 0; j < t.size(); ++j) c.tau[j] = number(t[j], index("sea.tau", j));
            } else {
                fail("sea.tau", "expected a number or one value per subsystem");
            }
        }
        if (sea.contains("extra_conserved")) {
            const auto& ex = sea.at("extra_conserved");
            if (!ex.is_array()) fail("sea.extra_conserved", "expected an array of matrices");
            std::size_t total = 1;
            for (auto d : c.dims) total *= d;
            for (std::size_t k = 0; k < ex.size(); ++k) {
                c.extra_conserved.push_back(parse_matrix(ex[k], total, c.dims, index("sea.extra_conserved", k)));
            }
        }
        c.gram_rcond = number_or(sea, "gram_rcond", "sea", c.gram_rcond);
        c.eps_bln = number_or(sea, "eps_bln", "sea", c.eps_bln);
        c.k_boltzmann = number_or(sea, "k_boltzmann", "sea", c.k_boltzmann);
    }
    if (doc.contains("integrator")) c.integrator = parse_integrator(doc.at("integrator"), "integrator");
    if (doc.contains("output")) {
        const auto& o = doc.at("output");
        check_keys(o, "output", {"directory", "prefix"});
        if (o.contains("directory")) c.output.directory = text(o.at("directory"), "output.directory");
        if (o.contains("prefix")) c.output.prefix = text(o.at("prefix"), "output.prefix");
    }
    if (doc.contains("nosignal")) {
        const auto& n = doc.at("nosignal");
        check_keys(n, "nosignal", {"subsystem", "trials", "tolerance", "spectrum_tolerance", "modified_hamiltonian"});
        c.nosignal.subsystem = count_or(n, "subsystem", "nosignal", 0);
        c.nosignal.trials = count_or(n, "trials", "nosignal", c.nosignal.trials);
        c.nosignal.tolerance = number_or(n, "tolerance", "nosignal", c.nosignal.tolerance);
        c.nosignal.spectrum_tolerance = number_or(n, "spectrum_tolerance", "nosignal", c.nosignal.spectrum_tolerance);
        if (n.contains("modified_hamiltonian") && !n.at("modified_hamiltonian").is_null()) {
            c.nosignal.modified =
                parse_hamiltonian(n.at("modified_hamiltonian"), c.dims, "nosignal.modified_hamiltonian");
        }
    }
    if (doc.contains("sweep")) c.sweep = parse_sweep(doc.at("sweep"), "sweep");
    if (doc.contains("seed")) c.seed = seed_value(doc.at("seed"), "seed");
    c.validate();
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("config: '" + path + "' is not valid JSON (" + e.what() + ")");
    }
    return parse_config(doc);
}

json to_json(const RunConfig& c) {
    json out;
    out["schema_version"] = c.schema_version;
    out["structure"] = {{"dims", c.dims}};
    out["hamiltonian"] = hamiltonian_to_json(c.hamiltonian);
    out["hbar"] = c.hbar;
    out["state"] = state_to_json(c.state);
    json extras = json::array();
    for (const auto& m : c.extra_conserved) extras.push_back(matrix_to_json(m));
    out["sea"] = {{"tau", c.tau},
                  {"extra_conserved", extras},
                  {"gram_rcond", c.gram_rcond},
                  {"eps_bln", c.eps_bln},
                  {"k_boltzmann", c.k_boltzmann}};
    const auto& i = c.integrator;
    out["integrator"] = {{"stepper", i.stepper == Stepper::rk4 ? "rk4" : "dormand-prince"},
                         {"dt_initial", i.dt_initial},
                         {"rel_tol", i.rel_tol},
                         {"abs_tol", i.abs_tol},
                         {"t_final", i.t_final},
                         {"dt_min", i.dt_min},
                         {"dt_max", i.dt_max},
                         {"max_steps", i.max_steps},
                         {"projection_interval", i.projection_interval},
                         {"rank_floor", i.rank_floor},
                         {"clip_tol", i.clip_tol},
                         {"fixed_point_tol", i.fixed_point_tol},
                         {"state_stride", i.state_stride}};
    out["output"] = {{"directory", c.output.directory}, {"prefix", c.output.prefix}};
    out["nosignal"] = {{"subsystem", c.nosignal.subsystem},
                       {"trials", c.nosignal.trials},
                       {"tolerance", c.nosignal.tolerance},
                       {"spectrum_tolerance", c.nosignal.spectrum_tolerance},
                       {"modified_hamiltonian", c.nosignal.modified ? hamiltonian_to_json(*c.nosignal.modified)
                                                                    : json(nullptr)}};
    json axes = json::array(), links = json::array();
    for (const auto& a : c.sweep.axes) axes.push_back({{"path", a.path}, {"values", a.values}});
    for (const auto& l : c.sweep.links) {
        links.push_back({{"path", l.path}, {"source", l.source}, {"scale", l.scale}, {"offset", l.offset}});
    }
    out["sweep"] = {{"axes", axes}, {"links", links}, {"evolve", c.sweep.evolve}};
    out["seed"] = c.seed;
    return out;
}

namespace {
DensityMatrix build_state(const RunConfig& c);
}

CompositeModel RunConfig::model() const {
    return CompositeModel(CompositeStructure(dims), hamiltonian, hbar);
}

SeaParams RunConfig::params(const CompositeModel& m) const {
    SeaParams p;
    p.tau = tau;
    p.conserved = ConservedSet::with_extras(m, extra_conserved);
    p.gram_rcond = gram_rcond;
    p.eps_bln = eps_bln;
    p.k_boltzmann = k_boltzmann;
    p.validate(m);
    return p;
}

DensityMatrix RunConfig::initial_state() const {
    try {
        return build_state(*this);
    } catch (const ConfigError& e) {
        const std::string what = e.what();
        if (what.rfind("state", 0) == 0) throw;
        throw ConfigError("state: " + what);
    }
}

namespace {

DensityMatrix build_state(const RunConfig& c) {
    const auto& dims = c.dims;
    const auto& state = c.state;
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    switch (state.kind) {
    case StateSpec::Kind::matrix:
        if (static_cast<std::size_t>(state.matrix.rows()) != total) {
            throw ConfigError("state.matrix: expected " + std::to_string(total) + "x" + std::to_string(total));
        }
        return DensityMatrix::from_matrix(state.matrix);
    case StateSpec::Kind::pauli:
        require_two_qubits(dims, "pauli");
        return assemble_pauli_state(state.pauli);
    case StateSpec::Kind::random:
        if (state.rank > total) throw ConfigError("state.random.rank: exceeds the total dimension");
        return random_density(total, state.rank == 0 ? total : state.rank, state.seed);
    case StateSpec::Kind::preset: break;
    }
    if (state.preset == "maximally_mixed") {
        return DensityMatrix::trusted(identity(total) / static_cast<double>(total));
    }
    require_two_qubits(dims, state.preset);
    if (state.preset == "example1") return example1_state({state.a, state.b});
    if (state.preset == "example2") return example2_state({state.a, state.b});
    if (state.preset == "bell_diagonal") return bell_diagonal(state.c);
    return werner(state.w);
}

} // namespace

void RunConfig::validate() const {
    const auto m = model();
    params(m);
    initial_state();
    integrator.validate();
    if (nosignal.subsystem >= dims.size()) fail("nosignal.subsystem", "out of range");
    if (nosignal.trials == 0) fail("nosignal.trials", "must be positive");
    if (!(nosignal.tolerance > 0.0)) fail("nosignal.tolerance", "must be positive");
    if (nosignal.modified) (void)CompositeModel(CompositeStructure(dims), *nosignal.modified, hbar);
}

std::vector<std::string> preset_names() { return {"example1", "example2", "bell_diagonal", "werner"}; }

RunConfig preset_config(const std::string& name) {
    RunConfig c;
    c.dims = {2, 2};
    c.hamiltonian = {{sigma_z(), sigma_z()}, Matrix()};
    c.tau = {1.0, 1.0};
    c.state.kind = StateSpec::Kind::preset;
    c.state.preset = name;
    c.output.prefix = name;
    if (name == "example1") {
        c.state.a = 0.5;
        c.state.b = 0.3;
    } else if (name == "example2") {
        c.state.a = -0.3;
        c.state.b = 0.3;
        SweepAxis axis{"/state/b", {}};
        for (int k = 0; k <= 10; ++k) axis.values.push_back(0.05 * k);
        c.sweep.axes.push_back(axis);
        c.sweep.links.push_back({"/state/a", "/state/b", -1.0, 0.0});
    } else if (name == "bell_diagonal") {
        c.hamiltonian.locals[1] = 0.7 * sigma_x();
        c.state.c = {-0.5, -0.3, -0.2};
        c.integrator.t_final = 20.0;
    } else if (name == "werner") {
        c.hamiltonian.locals[1] = 0.7 * sigma_x();
        c.state.w = 0.9;
        c.integrator.t_final = 20.0;
    } else {
        throw ConfigError("preset: unknown name '" + name + "' (example1, example2, bell_diagonal, werner)");
    }
    c.validate();
    return c;
}

namespace {

void dump_value(const json& v, int indent, int depth, std::string& out) {
    const auto scalar = [](const json& x) { return !x.is_array() && !x.is_object(); };
    switch (v.type()) {
    case json::value_t::number_float: {
        const double x = v.get<double>();
        if (!std::isfinite(x)) {
            out += "null";
        } else {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out += buf;
        }
        return;
    }
    case json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        bool flat = true;
        for (const auto& e : v) flat = flat && (scalar(e) || (e.is_array() && e.size() == 2 && scalar(e[0])));
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ", ";
                dump_value(v[i], indent, depth + 1, out);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            out += std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ');
            dump_value(v[i], indent, depth + 1, out);
            out += i + 1 < v.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(indent * depth), ' ') + "]";
        return;
    }
    case json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        std::size_t i = 0;
        for (const auto& [key, value] : v.items()) {
            out += std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') + json(key).dump() + ": ";
            dump_value(value, indent, depth + 1, out);
            out += ++i < v.size() ? ",\n" : "\n";
        }
        out += std::string(static_cast<std::size_t>(indent * depth), ' ') + "}";
        return;
    }
    default: out += v.dump(); return;
    }
}

} // namespace

std::string dump17(const json& doc, int indent) {
    std::string out;
    dump_value(doc, indent, 0, out);
    out += "\n";
    return out;
}

} // namespace seadyn::cli
