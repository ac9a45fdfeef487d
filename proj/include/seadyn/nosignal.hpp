// nosignal.hpp — randomized certification that operations on J̄ (local unitaries,
// interactions that do not touch J) leave ρ_J, the perceived operators on J and the
// local equation of motion of J unchanged.

#pragma once

#include "seadyn/composite.hpp"
#include "seadyn/linalg.hpp"
#include "seadyn/sea.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace seadyn {

// ρ′ = (I ⊗ U) ρ (I ⊗ U†) with U acting on factor j. Throws PreconditionError unless U is
// d_j × d_j and unitary within 1e-12.
DensityMatrix apply_local_unitary(const DensityMatrix& rho, const Matrix& u,
                                  const CompositeStructure& s, std::size_t j);
// Same with U acting on the block of factors in `support` (in the given order).
DensityMatrix apply_block_unitary(const DensityMatrix& rho, const Matrix& u,
                                  const CompositeStructure& s,
                                  std::span<const std::size_t> support);

// dρ_J/dt as a function of the global state.
using LocalLaw = std::function<Matrix(const DensityMatrix& rho, std::size_t j,
                                      const CompositeModel& model, const SeaParams& params)>;

// The SEA local equation of motion.
LocalLaw sea_law();

// SEA plus a term that reads ρ_J̄ directly instead of through perception:
// D^J → D^J + strength · Tr(ρ_J̄ X) Y with X = |0⟩⟨1| + |1⟩⟨0| on ℋ_J̄ and
// Y = −i|0⟩⟨1| + i|1⟩⟨0| on ℋ_J. For two qubits this adds b_x σ_y to D^A. It signals.
LocalLaw mutant_law(double strength = 1.0);

struct Witness {
    std::size_t trial{0};
    std::uint64_t seed{0};
    std::string check;
    double deviation{0.0};
    Matrix state;     // ρ
    Matrix operation; // the unitary applied on J̄ (empty for interaction checks)
};

struct CertificationReport {
    std::string scenario;  // "unitary-invariance" or "remote-interaction-invariance"
    std::size_t subsystem{0};
    std::size_t trials{0};
    double tolerance{1e-9};
    double spectrum_tolerance{1e-10};
    std::uint64_t seed{0};
    std::vector<std::uint64_t> seeds;  // per trial
    std::vector<std::string> ensemble; // state family per trial

    double max_marginal_deviation{0.0};    // ‖ρ′_J − ρ_J‖_F, or ‖Tr_J̄ ρ̇ − Tr_J̄ ρ̇′‖_F across models
    double max_perception_deviation{0.0};  // perceived Bln (unitary) or Δ(H)^J (interaction)
    double max_local_rhs_deviation{0.0};   // local law
    double max_dissipator_deviation{0.0};  // ‖D^J − D′^J‖_F
    double max_spectrum_deviation{0.0};    // sorted spectra of ρ and ρ′ (unitary scenario)

    bool marginal_pass{true};
    bool perception_pass{true};
    bool local_rhs_pass{true};
    bool dissipator_pass{true};
    bool spectrum_pass{true};

    std::vector<Witness> witnesses;

    bool passed() const noexcept {
        return marginal_pass && perception_pass && local_rhs_pass && dissipator_pass &&
               spectrum_pass;
    }
};

struct CertificationOptions {
    std::size_t subsystem{0};
    std::size_t trials{200};
    std::uint64_t seed{0};
    double tolerance{1e-9};
    double spectrum_tolerance{1e-10};
    bool identity_operations{false};  // use U = I on every trial
    std::size_t max_witnesses{3};
    unsigned jobs{1};
};

// Per-trial seeds drawn from one mt19937_64 stream seeded with `seed`.
std::vector<std::uint64_t> trial_seeds(std::uint64_t seed, std::size_t trials);

// Ensemble member `trial`: trials cycle through full-rank, full-rank, rank-deficient and
// structured. The structured family is the two-qubit Pauli form on 2⊗2 and full rank otherwise.
DensityMatrix ensemble_state(const CompositeStructure& s, std::size_t trial, std::uint64_t seed,
                             std::string* family = nullptr);

// Random unitaries U on J̄. Throws PreconditionError when the model couples J to J̄.
CertificationReport certify_unitary_invariance(const CompositeModel& model,
                                               const SeaParams& params,
                                               const CertificationOptions& options,
                                               const LocalLaw& law = sea_law());

// Same random states under two models that differ only by terms acting on J̄. Throws
// PreconditionError when the structures differ or the difference touches J.
CertificationReport certify_remote_interaction_invariance(const CompositeModel& base,
                                                          const SeaParams& base_params,
                                                          const CompositeModel& modified,
                                                          const SeaParams& modified_params,
                                                          const CertificationOptions& options,
                                                          const LocalLaw& law = sea_law());

} // namespace seadyn
