// composite.hpp — subsystem layout, Hamiltonian assembly, reduced states and
// interaction detection for a composite quantum system.

#pragma once

#include "seadyn/linalg.hpp"
#include "seadyn/structure.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace seadyn {

// Local Hamiltonians H_J (one per subsystem, d_J × d_J) plus an interaction V on the full space.
// An empty (0×0) interaction means V = 0.
struct HamiltonianSpec {
    std::vector<Matrix> locals;
    Matrix interaction;
};

// X_J ⊗ I on the full space, placed at factor J.
Matrix embed_local(const Matrix& x, std::size_t j, const CompositeStructure& s);

// H = Σ_J embed(H_J) + V. Throws ConfigError on dimension mismatch or non-Hermitian input.
Matrix assemble_hamiltonian(const HamiltonianSpec& spec, const CompositeStructure& s);

// Structure plus the Hamiltonian that defines the dynamical law.
class CompositeModel {
public:
    CompositeModel(CompositeStructure structure, HamiltonianSpec spec, double hbar = 1.0);

    const CompositeStructure& structure() const noexcept { return structure_; }
    const HamiltonianSpec& spec() const noexcept { return spec_; }
    const Matrix& hamiltonian() const noexcept { return hamiltonian_; }
    const Matrix& local_hamiltonian(std::size_t j) const;
    // Zero matrix on the full space when the HamiltonianSpec carries no interaction.
    const Matrix& interaction() const noexcept { return interaction_; }
    double hbar() const noexcept { return hbar_; }
    std::size_t dim() const noexcept { return structure_.total_dim(); }

private:
    CompositeStructure structure_;
    HamiltonianSpec spec_;
    Matrix interaction_;
    Matrix hamiltonian_;
    double hbar_;
};

// ρ_J = Tr_J̄ ρ
DensityMatrix reduced_state(const DensityMatrix& rho, const CompositeStructure& s, std::size_t j);
// ρ_J̄ = Tr_J ρ, acting on the remaining factors in ascending order.
DensityMatrix complement_state(const DensityMatrix& rho, const CompositeStructure& s,
                               std::size_t j);

// Orthogonal split H = embed(local) + embed(complement) + residual.
// The trace of H is shared equally between the two local parts and the residual is
// Frobenius-orthogonal to every operator of the form X_J ⊗ I + I ⊗ Y_J̄.
struct InteractionSplit {
    Matrix local;       // on ℋ_J
    Matrix complement;  // on ℋ_J̄
    Matrix residual;    // on ℋ
};

InteractionSplit interaction_split(const Matrix& h, std::size_t j, const CompositeStructure& s);

// ‖residual‖_F < tol · max(1, ‖H‖_F)
bool is_noninteracting(const Matrix& h, std::size_t j, const CompositeStructure& s,
                       double tol = 1e-10);

// Two-qubit state ¼[I + Σ_j (a_j σ_j⊗I + b_j I⊗σ_j + c_j σ_j⊗σ_j)].
struct PauliState2Q {
    std::array<double, 3> a{};
    std::array<double, 3> b{};
    std::array<double, 3> c{};
};

// Throws InvalidStateError if the result has an eigenvalue below −clip_tol.
DensityMatrix assemble_pauli_state(const PauliState2Q& p, double clip_tol = kClipTol);

// (Tr ρσ_x, Tr ρσ_y, Tr ρσ_z) of a 2×2 operator.
std::array<double, 3> bloch_vector(const Matrix& m);

// Pauli components of a two-qubit-local 2×2 operator: m = ½(c0 I + Σ c_j σ_j).
std::array<double, 4> pauli_components(const Matrix& m);

} // namespace seadyn
