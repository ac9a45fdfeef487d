// integrator.cpp — Dormand–Prince 5(4) and RK4 stepping of the SEA flow

#include "seadyn/integrator.hpp"

#include "seadyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace seadyn {

void IntegratorConfig::validate() const {
    auto positive = [](double v, const char* field) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError(std::string("integrator.") + field + ": must be positive");
        }
    };
    positive(dt_initial, "dt_initial");
    positive(rel_tol, "rel_tol");
    positive(abs_tol, "abs_tol");
    positive(t_final, "t_final");
    positive(dt_min, "dt_min");
    positive(dt_max, "dt_max");
    positive(clip_tol, "clip_tol");
    positive(fixed_point_tol, "fixed_point_tol");
    if (!(rank_floor >= 0.0)) throw ConfigError("integrator.rank_floor: must be non-negative");
    if (projection_interval == 0) throw ConfigError("integrator.projection_interval: must be >= 1");
    if (state_stride == 0) throw ConfigError("integrator.state_stride: must be >= 1");
    if (max_steps == 0) throw ConfigError("integrator.max_steps: must be >= 1");
}

Sample measure(const DensityMatrix& rho, double t, const CompositeModel& model,
               const SeaParams& params, const SeaEvaluation& eval) {
    const auto& s = model.structure();
    Sample out;
    out.t = t;
    out.trace = rho.matrix().trace().real();
    const auto sd = rho.spectrum();
    out.min_eigenvalue = sd.eigenvalues.minCoeff();
    out.max_eigenvalue = sd.eigenvalues.maxCoeff();
    double s_total = 0.0;
    for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
        s_total -= sd.eigenvalues(k) * bln(sd.eigenvalues(k), params.eps_bln);
    }
    out.entropy = params.k_boltzmann * s_total;
    out.energy = real_trace_product(rho.matrix(), model.hamiltonian());
    out.entropy_production = eval.entropy.total;
    out.entropy_production_gram = eval.entropy.total_gram;
    out.hamiltonian_norm = eval.hamiltonian_part.norm();
    out.rhs_norm = eval.rhs.norm();

    double local_entropy_sum = 0.0;
    for (std::size_t j = 0; j < s.count(); ++j) {
        const auto rho_j = reduced_state(rho, s, j);
        out.local_energies.push_back(real_trace_product(rho_j.matrix(), model.local_hamiltonian(j)));
        out.dissipator_norms.push_back(eval.dissipators[j].anticommutator_term.norm());
        out.bloch.push_back(s.dim(j) == 2 ? bloch_vector(rho_j.matrix())
                                          : std::array<double, 3>{0.0, 0.0, 0.0});
        local_entropy_sum += von_neumann_entropy(rho_j, params.eps_bln);
    }
    out.mutual_information = params.k_boltzmann * local_entropy_sum - out.entropy;
    return out;
}

namespace {

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b − b̂ (fifth minus embedded fourth order weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// exp(−iHs/ħ) from a fixed eigendecomposition of H.
class Propagator {
public:
    Propagator(const Matrix& h, double hbar) : spectrum_(herm_eig(h)), hbar_(hbar) {}

    Matrix at(double s) const {
        const auto& e = spectrum_.eigenvalues;
        Eigen::VectorXcd phases(e.size());
        for (Eigen::Index k = 0; k < e.size(); ++k) phases(k) = std::polar(1.0, -e(k) * s / hbar_);
        return spectrum_.eigenvectors * phases.asDiagonal() * spectrum_.eigenvectors.adjoint();
    }

private:
    SpectralDecomposition spectrum_;
    double hbar_;
};

double error_norm(const Matrix& err, const Matrix& y0, const Matrix& y1, double atol, double rtol) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < err.cols(); ++j) {
        for (Eigen::Index i = 0; i < err.rows(); ++i) {
            const double scale = atol + rtol * std::max(std::abs(y0(i, j)), std::abs(y1(i, j)));
            worst = std::max(worst, std::abs(err(i, j)) / scale);
        }
    }
    return worst;
}

// A state with eigenvalues at the rank floor can only move along directions that keep the
// null-space block of dρ/dt positive semidefinite. The composite dissipator does not vanish on
// ker ρ when ρ is correlated, so this can fail; integrating on would crawl at dt ~ clip_tol.
void check_tangent_cone(const DensityMatrix& rho, const Matrix& rhs, double t,
                        const IntegratorConfig& config) {
    const auto sd = rho.spectrum();
    Eigen::Index zeros = 0;
    while (zeros < sd.eigenvalues.size() && sd.eigenvalues(zeros) <= config.rank_floor) ++zeros;
    if (zeros == 0 || zeros == sd.eigenvalues.size()) return;
    const Matrix v0 = sd.eigenvectors.leftCols(zeros);
    const double rate = herm_eig(v0.adjoint() * rhs * v0).eigenvalues.minCoeff();
    if (rate < -config.clip_tol) {
        std::ostringstream os;
        os << "evolve: positivity blow-up at t = " << t << ": the flow leaves the positive cone on the "
           << zeros << "-dimensional null space of rho (eigenvalue rate " << rate << ")";
        throw NumericalError(os.str());
    }
}

} // namespace

// Steps run in the interaction picture of the current step: with U(s) = exp(−iHs/ħ) and
// ρ(t+s) = U(s) ρ̃(s) U(s)†, the Hamiltonian part is exact and the Runge–Kutta pair only
// integrates dρ̃/ds = U(s)† 𝒟[U(s) ρ̃ U(s)†] U(s), where 𝒟 is the dissipative part of the rhs.
// Tr ρ and Tr ρH are linear invariants of this flow and are preserved by every stage.
Trajectory evolve(const DensityMatrix& rho0, const CompositeModel& model, const SeaParams& params,
                  const IntegratorConfig& config) {
    config.validate();
    params.validate(model);
    if (rho0.dim() != model.dim()) throw ConfigError("initial state dimension does not match model");

    const Propagator propagator(model.hamiltonian(), model.hbar());
    Trajectory traj;
    DensityMatrix rho = rho0;
    double t = 0.0;
    SeaEvaluation eval = evaluate(rho, model, params);

    std::size_t sample_count = 0;
    auto record = [&](bool force_state) {
        traj.times.push_back(t);
        traj.samples.push_back(measure(rho, t, model, params, eval));
        if (force_state || sample_count % config.state_stride == 0) {
            traj.state_times.push_back(t);
            traj.states.push_back(rho);
        }
        ++sample_count;
    };
    record(true);

    // Dissipative velocity in the interaction picture at stage offset s.
    auto velocity = [&](const Matrix& u, const Matrix& y_tilde) -> Matrix {
        const Matrix lab = u * y_tilde * u.adjoint();
        return u.adjoint() * evaluate(DensityMatrix::trusted(lab), model, params).dissipative_part * u;
    };

    double dt = std::min(config.dt_initial, config.t_final);
    std::size_t since_projection = 0;
    std::size_t steps = 0;

    while (t < config.t_final) {
        if (++steps > config.max_steps) {
            std::ostringstream os;
            os << "evolve: exceeded max_steps = " << config.max_steps << " at t = " << t;
            throw NumericalError(os.str());
        }
        // A remainder at rounding level is folded into this step instead of becoming a sliver step.
        const bool last = t + dt >= config.t_final - 1e-9 * std::max(1.0, config.t_final);
        const double h = last ? config.t_final - t : dt;
        if (since_projection == 0) check_tangent_cone(rho, eval.rhs, t, config);
        const Matrix& y = rho.matrix();
        const Matrix& k1 = eval.dissipative_part;

        Matrix y_tilde;
        Matrix u_end = propagator.at(h);
        double err = 0.0;
        if (config.stepper == Stepper::rk4) {
            const Matrix u_half = propagator.at(0.5 * h);
            const Matrix r2 = velocity(u_half, y + 0.5 * h * k1);
            const Matrix r3 = velocity(u_half, y + 0.5 * h * r2);
            const Matrix r4 = velocity(u_end, y + h * r3);
            y_tilde = y + (h / 6.0) * (k1 + 2.0 * r2 + 2.0 * r3 + r4);
        } else {
            const Matrix k2 = velocity(propagator.at(c2 * h), y + h * (a21 * k1));
            const Matrix k3 = velocity(propagator.at(c3 * h), y + h * (a31 * k1 + a32 * k2));
            const Matrix k4 =
                velocity(propagator.at(c4 * h), y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            const Matrix k5 = velocity(propagator.at(c5 * h),
                                       y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const Matrix k6 =
                velocity(u_end, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            y_tilde = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Matrix k7 = velocity(u_end, y_tilde);
            const Matrix e = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            err = error_norm(e, y, y_tilde, config.abs_tol, config.rel_tol);
            if (!std::isfinite(err)) err = 1e10;
        }

        if (config.stepper == Stepper::dormand_prince && err > 1.0) {
            ++traj.rejected_steps;
            dt = h * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            if (dt < config.dt_min) {
                std::ostringstream os;
                os << "evolve: step size underflow (dt = " << dt << ") at t = " << t;
                throw NumericalError(os.str());
            }
            continue;
        }

        const Matrix y_new = u_end * y_tilde * u_end.adjoint();
        ++since_projection;
        if (since_projection >= config.projection_interval || last) {
            try {
                rho = project_to_state(y_new, config.clip_tol, config.rank_floor);
            } catch (const NumericalError&) {
                if (config.stepper == Stepper::rk4 || 0.5 * h < config.dt_min) throw;
                ++traj.rejected_steps;
                dt = 0.5 * h;
                continue;
            }
            since_projection = 0;
        } else {
            rho = DensityMatrix::trusted(y_new);
        }
        t = last ? config.t_final : t + h;
        ++traj.accepted_steps;
        eval = evaluate(rho, model, params);
        record(t >= config.t_final);

        if (config.stepper == Stepper::dormand_prince) {
            const double fac = err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
            dt = std::min(config.dt_max, h * fac);
        }
        if (last) break;
    }
    return traj;
}

std::string to_string(FlowClass c) {
    switch (c) {
    case FlowClass::dissipative_transient: return "dissipative-transient";
    case FlowClass::nondissipative_limit_cycle: return "nondissipative-limit-cycle";
    case FlowClass::stationary: return "stationary";
    }
    return "unknown";
}

FlowClass classify_samples(std::span<const Sample> samples, double tol) {
    bool stationary = !samples.empty();
    bool nondissipative = !samples.empty();
    for (const auto& s : samples) {
        if (s.rhs_norm >= tol) stationary = false;
        for (double n : s.dissipator_norms) {
            if (n >= tol) nondissipative = false;
        }
    }
    if (stationary) return FlowClass::stationary;
    if (nondissipative) return FlowClass::nondissipative_limit_cycle;
    return FlowClass::dissipative_transient;
}

FlowClass detect_fixed_point(const Trajectory& traj, double tol, std::size_t window) {
    const std::size_t n = traj.samples.size();
    if (n < 2) throw ConfigError("detect_fixed_point: trajectory needs at least 2 samples");
    if (window == 0) window = std::max<std::size_t>(2, n / 10);
    window = std::min(window, n);
    return classify_samples(std::span<const Sample>(traj.samples).last(window), tol);
}

} // namespace seadyn
