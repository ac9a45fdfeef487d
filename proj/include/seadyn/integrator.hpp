// integrator.hpp — time stepping of the SEA equation of motion with state
// projection, conservation monitors and limit-cycle detection.

#pragma once

#include "seadyn/composite.hpp"
#include "seadyn/linalg.hpp"
#include "seadyn/sea.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace seadyn {

enum class Stepper {
    dormand_prince,  // adaptive embedded 5(4) pair
    rk4,             // classical fixed step
};

struct IntegratorConfig {
    Stepper stepper{Stepper::dormand_prince};
    double dt_initial{1e-2};
    double rel_tol{1e-10};
    double abs_tol{1e-12};
    double t_final{50.0};
    double dt_min{1e-12};
    double dt_max{0.25};
    std::size_t max_steps{5'000'000};
    std::size_t projection_interval{1};  // accepted steps between projections
    // Eigenvalues at or below this value are set to zero when projecting. Values under
    // the integrator noise floor would otherwise be amplified by the ln λ branch of Bln.
    double rank_floor{kEpsBln};
    double clip_tol{kClipTol};
    double fixed_point_tol{1e-8};
    std::size_t state_stride{1};  // keep every n-th sampled state (the final state is always kept)

    void validate() const;
};

struct Sample {
    double t{0.0};
    double trace{1.0};
    double entropy{0.0};                    // −k_B Tr ρ ln ρ
    double energy{0.0};                     // Tr ρ H
    std::vector<double> local_energies;     // Tr ρ_J H_J
    double entropy_production{0.0};         // −Σ_J Tr[{D^J,ρ_J}(S(ρ))^J]
    double entropy_production_gram{0.0};    // Gram-determinant form of the same quantity
    std::vector<double> dissipator_norms;   // ‖{D^J, ρ_J}‖_F
    std::vector<std::array<double, 3>> bloch;  // per subsystem; zeros unless d_J = 2
    double mutual_information{0.0};         // Σ_J s(ρ_J) − s(ρ)
    double hamiltonian_norm{0.0};           // ‖(i/ħ)[H, ρ]‖_F
    double rhs_norm{0.0};                   // ‖dρ/dt‖_F
    double min_eigenvalue{0.0};
    double max_eigenvalue{1.0};
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Sample> samples;
    std::vector<double> state_times;
    std::vector<DensityMatrix> states;
    std::size_t accepted_steps{0};
    std::size_t rejected_steps{0};

    const DensityMatrix& final_state() const { return states.back(); }
};

// Monitors at one state.
Sample measure(const DensityMatrix& rho, double t, const CompositeModel& model,
               const SeaParams& params, const SeaEvaluation& eval);

// Integrates from t = 0 to config.t_final. Monitors are recorded at t = 0 and after every
// accepted step. Throws NumericalError on positivity blow-up (including a rhs that points out of
// the positive cone on the null space of a rank-deficient state) or step-size underflow.
Trajectory evolve(const DensityMatrix& rho0, const CompositeModel& model, const SeaParams& params,
                  const IntegratorConfig& config);

enum class FlowClass {
    dissipative_transient,
    nondissipative_limit_cycle,
    stationary,
};

std::string to_string(FlowClass c);

// Classification of a run of samples: stationary if every rhs norm is below tol,
// nondissipative limit cycle if every dissipator norm is below tol, otherwise transient.
FlowClass classify_samples(std::span<const Sample> samples, double tol);

// Classifies the trailing window (last `window` samples; 0 means the last 10%, at least 2).
FlowClass detect_fixed_point(const Trajectory& traj, double tol, std::size_t window = 0);

} // namespace seadyn
