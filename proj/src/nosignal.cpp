// nosignal.cpp — no-signaling certification harness

#include "seadyn/nosignal.hpp"

#include "seadyn/errors.hpp"
#include "seadyn/perception.hpp"
#include "seadyn/presets.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

namespace seadyn {

DensityMatrix apply_block_unitary(const DensityMatrix& rho, const Matrix& u,
                                  const CompositeStructure& s,
                                  std::span<const std::size_t> support) {
    const auto d = static_cast<Eigen::Index>(s.dim_of(support));
    if (u.rows() != d || u.cols() != d) {
        std::ostringstream os;
        os << "apply_local_unitary: U is " << u.rows() << "x" << u.cols() << ", expected " << d << "x"
           << d;
        throw PreconditionError(os.str());
    }
    if (!is_unitary(u, 1e-12)) {
        std::ostringstream os;
        os << "apply_local_unitary: U is not unitary (‖U†U − I‖_F = "
           << (u.adjoint() * u - Matrix::Identity(d, d)).norm() << ")";
        throw PreconditionError(os.str());
    }
    if (rho.dim() != s.total_dim()) throw ConfigError("apply_local_unitary: state dimension mismatch");
    const Matrix full = embed(u, s, support);
    return DensityMatrix::trusted(full * rho.matrix() * full.adjoint());
}

DensityMatrix apply_local_unitary(const DensityMatrix& rho, const Matrix& u,
                                  const CompositeStructure& s, std::size_t j) {
    s.check_index(j);
    const std::size_t support[] = {j};
    return apply_block_unitary(rho, u, s, support);
}

LocalLaw sea_law() {
    return [](const DensityMatrix& rho, std::size_t j, const CompositeModel& model,
              const SeaParams& params) { return local_rhs(rho, j, model, params); };
}

LocalLaw mutant_law(double strength) {
    return [strength](const DensityMatrix& rho, std::size_t j, const CompositeModel& model,
                      const SeaParams& params) {
        const auto& s = model.structure();
        const Matrix rest = complement_state(rho, s, j).matrix();
        const auto dj = static_cast<Eigen::Index>(s.dim(j));
        if (dj < 2 || rest.rows() < 2) throw ConfigError("mutant_law: needs dimension >= 2 on J and J̄");
        // Tr(ρ_J̄ X) with X = |0⟩⟨1| + |1⟩⟨0|
        const double c = strength * 2.0 * rest(1, 0).real();
        Matrix y = Matrix::Zero(dj, dj);
        y(0, 1) = cplx(0.0, -1.0);
        y(1, 0) = cplx(0.0, 1.0);
        const Matrix rho_j = reduced_state(rho, s, j).matrix();
        return Matrix(local_rhs(rho, j, model, params) - c * anticommutator(y, rho_j));
    };
}

std::vector<std::uint64_t> trial_seeds(std::uint64_t seed, std::size_t trials) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> out(trials);
    for (auto& x : out) x = rng();
    return out;
}

DensityMatrix ensemble_state(const CompositeStructure& s, std::size_t trial, std::uint64_t seed,
                             std::string* family) {
    const std::size_t d = s.total_dim();
    auto label = [family](const char* name) {
        if (family) *family = name;
    };
    switch (trial % 4) {
    case 2:
        if (d > 1) {
            label("rank-deficient");
            return random_density(d, 1 + seed % (d - 1), seed);
        }
        break;
    case 3:
        if (s.dims() == std::vector<std::size_t>{2, 2}) {
            label("pauli-family");
            return assemble_pauli_state(random_pauli_state(seed), 0.0);
        }
        break;
    default:
        break;
    }
    label("full-rank");
    return random_density(d, d, seed);
}

namespace {

struct TrialResult {
    std::string family;
    double marginal{0.0};
    double perception{0.0};
    double local_rhs{0.0};
    double dissipator{0.0};
    double spectrum{0.0};
    Matrix state;
    Matrix operation;
};

template <class Fn>
std::vector<TrialResult> run_trials(std::size_t n, unsigned jobs, Fn&& fn) {
    std::vector<TrialResult> results(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                results[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < count; ++k) pool.emplace_back(worker);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

void aggregate(CertificationReport& report, const std::vector<TrialResult>& results,
               const CertificationOptions& options) {
    report.ensemble.clear();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        report.ensemble.push_back(r.family);
        report.max_marginal_deviation = std::max(report.max_marginal_deviation, r.marginal);
        report.max_perception_deviation = std::max(report.max_perception_deviation, r.perception);
        report.max_local_rhs_deviation = std::max(report.max_local_rhs_deviation, r.local_rhs);
        report.max_dissipator_deviation = std::max(report.max_dissipator_deviation, r.dissipator);
        report.max_spectrum_deviation = std::max(report.max_spectrum_deviation, r.spectrum);

        const std::pair<const char*, double> checks[] = {{"marginal", r.marginal},
                                                         {"perception", r.perception},
                                                         {"local_rhs", r.local_rhs},
                                                         {"dissipator", r.dissipator}};
        for (const auto& [name, dev] : checks) {
            if (!(dev < options.tolerance) && report.witnesses.size() < options.max_witnesses) {
                report.witnesses.push_back({i, report.seeds[i], name, dev, r.state, r.operation});
            }
        }
        if (!(r.spectrum < options.spectrum_tolerance) &&
            report.witnesses.size() < options.max_witnesses) {
            report.witnesses.push_back({i, report.seeds[i], "spectrum", r.spectrum, r.state, r.operation});
        }
    }
    report.marginal_pass = report.max_marginal_deviation < options.tolerance;
    report.perception_pass = report.max_perception_deviation < options.tolerance;
    report.local_rhs_pass = report.max_local_rhs_deviation < options.tolerance;
    report.dissipator_pass = report.max_dissipator_deviation < options.tolerance;
    report.spectrum_pass = report.max_spectrum_deviation < options.spectrum_tolerance;
}

CertificationReport make_report(const char* scenario, const CertificationOptions& options) {
    if (options.trials == 0) throw ConfigError("nosignal.trials: must be positive");
    if (!(options.tolerance > 0.0)) throw ConfigError("nosignal.tolerance: must be positive");
    CertificationReport report;
    report.scenario = scenario;
    report.subsystem = options.subsystem;
    report.trials = options.trials;
    report.tolerance = options.tolerance;
    report.spectrum_tolerance = options.spectrum_tolerance;
    report.seed = options.seed;
    report.seeds = trial_seeds(options.seed, options.trials);
    return report;
}

} // namespace

CertificationReport certify_unitary_invariance(const CompositeModel& model,
                                               const SeaParams& params,
                                               const CertificationOptions& options,
                                               const LocalLaw& law) {
    const auto& s = model.structure();
    const std::size_t j = options.subsystem;
    s.check_index(j);
    if (s.count() < 2) throw PreconditionError("nosignal: the model needs at least two subsystems");
    params.validate(model);
    if (!is_noninteracting(model.hamiltonian(), j, s)) {
        std::ostringstream os;
        os << "nosignal: subsystem " << j
           << " interacts with the rest of the system; local-unitary invariance does not apply";
        throw PreconditionError(os.str());
    }
    auto report = make_report("unitary-invariance", options);
    const auto rest = s.complement(j);
    const std::size_t d_rest = s.dim_of(rest);

    auto results = run_trials(options.trials, options.jobs, [&](std::size_t i) {
        const std::uint64_t seed = report.seeds[i];
        TrialResult r;
        const DensityMatrix rho = ensemble_state(s, i, seed, &r.family);
        const Matrix u = options.identity_operations ? identity(d_rest)
                                                     : random_unitary(d_rest, seed ^ 0x5bd1e995u);
        const DensityMatrix moved = apply_block_unitary(rho, u, s, rest);

        r.marginal = (reduced_state(moved, s, j).matrix() - reduced_state(rho, s, j).matrix()).norm();
        const PerceptionFrame f0(rho, s, j), f1(moved, s, j);
        r.perception = (f1.perceive(matrix_bln(moved, params.eps_bln)) -
                        f0.perceive(matrix_bln(rho, params.eps_bln)))
                           .norm();
        r.local_rhs = (law(moved, j, model, params) - law(rho, j, model, params)).norm();
        r.dissipator = (dissipator(moved, model, j, params).dissipator -
                        dissipator(rho, model, j, params).dissipator)
                           .norm();
        const RealVector e0 = rho.spectrum().eigenvalues, e1 = moved.spectrum().eigenvalues;
        r.spectrum = (e1 - e0).cwiseAbs().maxCoeff();
        r.state = rho.matrix();
        r.operation = u;
        return r;
    });
    aggregate(report, results, options);
    return report;
}

CertificationReport certify_remote_interaction_invariance(const CompositeModel& base,
                                                          const SeaParams& base_params,
                                                          const CompositeModel& modified,
                                                          const SeaParams& modified_params,
                                                          const CertificationOptions& options,
                                                          const LocalLaw& law) {
    const auto& s = base.structure();
    const std::size_t j = options.subsystem;
    if (!(s == modified.structure())) {
        throw PreconditionError("nosignal: base and modified models have different structures");
    }
    s.check_index(j);
    if (s.count() < 2) throw PreconditionError("nosignal: the model needs at least two subsystems");
    base_params.validate(base);
    modified_params.validate(modified);

    const Matrix diff = modified.hamiltonian() - base.hamiltonian();
    const auto split = interaction_split(diff, j, s);
    const double scale = std::max(1.0, diff.norm());
    const auto dj = static_cast<Eigen::Index>(s.dim(j));
    const Matrix local_traceless =
        split.local - (split.local.trace() / static_cast<double>(dj)) * Matrix::Identity(dj, dj);
    if (split.residual.norm() >= 1e-10 * scale || local_traceless.norm() >= 1e-10 * scale) {
        std::ostringstream os;
        os << "nosignal: the modification touches subsystem " << j << " (coupling residual "
           << split.residual.norm() << ", local part " << local_traceless.norm() << ")";
        throw PreconditionError(os.str());
    }

    auto report = make_report("remote-interaction-invariance", options);
    const auto rest = s.complement(j);

    auto results = run_trials(options.trials, options.jobs, [&](std::size_t i) {
        const std::uint64_t seed = report.seeds[i];
        TrialResult r;
        const DensityMatrix rho = ensemble_state(s, i, seed, &r.family);
        r.marginal = (partial_trace(sea_rhs(rho, modified, modified_params), s, rest) -
                      partial_trace(sea_rhs(rho, base, base_params), s, rest))
                         .norm();
        const PerceptionFrame frame(rho, s, j);
        r.perception =
            (frame.deviation(modified.hamiltonian()) - frame.deviation(base.hamiltonian())).norm();
        r.local_rhs = (law(rho, j, modified, modified_params) - law(rho, j, base, base_params)).norm();
        r.dissipator = (dissipator(rho, modified, j, modified_params).dissipator -
                        dissipator(rho, base, j, base_params).dissipator)
                           .norm();
        r.state = rho.matrix();
        return r;
    });
    aggregate(report, results, options);
    return report;
}

} // namespace seadyn
