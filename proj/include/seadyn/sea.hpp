// sea.hpp — steepest-entropy-ascent dissipators and the composite equation of motion
//
//   dρ/dt = −(i/ħ)[H, ρ] − Σ_J {D^J, ρ_J} ⊗ ρ_J̄
//
// Each local dissipator points along the steepest entropy ascent direction on ℋ_J,
// constrained so that every conserved mean value Tr(ρ C_k) stays constant:
//
//   4 τ_J D^J = (Bln ρ)^J + Σ_ℓ β^J_ℓ (C_ℓ)^J
//   Σ_ℓ β^J_ℓ Tr[ρ_J {(C_ℓ)^J, (C_k)^J}] = −Tr[ρ_J {(Bln ρ)^J, (C_k)^J}]
//
// The 4τ_J normalization makes the multiplier construction coincide with the
// two-by-two determinant form and with the closed-form two-qubit dissipators.

#pragma once

#include "seadyn/composite.hpp"
#include "seadyn/linalg.hpp"
#include "seadyn/perception.hpp"

#include <cstddef>
#include <vector>

namespace seadyn {

// Conserved observables on the full space. The first entry is always the identity.
struct ConservedSet {
    std::vector<Matrix> operators;

    // {I, H}
    static ConservedSet standard(const CompositeModel& model);
    // {I, H, extras...}
    static ConservedSet with_extras(const CompositeModel& model, std::vector<Matrix> extras);

    void validate(std::size_t dim) const;
};

struct SeaParams {
    std::vector<double> tau;  // relaxation time per subsystem, > 0
    ConservedSet conserved;
    double gram_rcond{1e-10};
    double eps_bln{kEpsBln};
    double k_boltzmann{1.0};

    // τ_J = tau for every subsystem, conserved = {I, H}.
    static SeaParams standard(const CompositeModel& model, double tau = 1.0);

    void validate(const CompositeModel& model) const;
};

struct DissipatorResult {
    std::size_t subsystem{0};
    Matrix dissipator;           // D^J on ℋ_J
    RealVector multipliers;      // β^J, one per conserved operator
    Matrix anticommutator_term;  // {D^J, ρ_J}
    double gram_condition{1.0};  // condition number of the covariance Gram matrix
    std::size_t gram_rank{0};    // constraints kept after the pseudo-inverse cutoff
};

// Multiplier route. Degenerate constraint systems are resolved by a pseudo-inverse.
RealVector solve_multipliers(const DensityMatrix& rho, const CompositeModel& model,
                             std::size_t j, const SeaParams& params);
DissipatorResult dissipator(const DensityMatrix& rho, const CompositeModel& model, std::size_t j,
                            const SeaParams& params);

// Determinant form for C = {I, H}:
//
//   D^J = 1/(4τ_J) · | Δ(Bln ρ)^J      Δ(H)^J  | / (H,H)^J
//                    | (H, Bln ρ)^J    (H,H)^J |
//
// Throws DegenerateHamiltonianError when (H,H)^J ≤ rcond.
Matrix dissipator_compact(const DensityMatrix& rho, const CompositeModel& model, std::size_t j,
                          double tau, double rcond = 1e-10, double eps_bln = kEpsBln);

struct EntropyProduction {
    double total{0.0};                    // −Σ_J Tr[{D^J, ρ_J} (S(ρ))^J]
    std::vector<double> per_subsystem;
    double total_gram{0.0};               // Σ_J (k_B / 2τ_J) · Gram determinant ratio
    std::vector<double> per_subsystem_gram;
};

// Everything the integrator monitors at one state, from a single spectral decomposition.
struct SeaEvaluation {
    Matrix rhs;
    Matrix hamiltonian_part;
    Matrix dissipative_part;
    std::vector<DissipatorResult> dissipators;
    EntropyProduction entropy;
};

SeaEvaluation evaluate(const DensityMatrix& rho, const CompositeModel& model,
                       const SeaParams& params);

Matrix sea_rhs(const DensityMatrix& rho, const CompositeModel& model, const SeaParams& params);

// dρ_J/dt = −(i/ħ)[H_J, ρ_J] − (i/ħ) Tr_J̄([V, ρ]) − {D^J, ρ_J}
Matrix local_rhs(const DensityMatrix& rho, std::size_t j, const CompositeModel& model,
                 const SeaParams& params);

EntropyProduction entropy_production(const DensityMatrix& rho, const CompositeModel& model,
                                     const SeaParams& params);

} // namespace seadyn
