// presets.hpp — closed-form two-qubit example states, their dissipators and
// partial-transpose spectra, plus Bell-diagonal and Werner states.

#pragma once

#include "seadyn/composite.hpp"
#include "seadyn/linalg.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace seadyn {

// Two noninteracting qubits with H_A = H_B = σ_z.
CompositeModel two_qubit_sigma_z_model();

// {D^A, ρ_A} and {D^B, ρ_B}.
struct AnticommutatorPair {
    Matrix a;
    Matrix b;
};

// a_x = a, b_x = b, every other Pauli coefficient zero.
struct Example1Params {
    double a{0.0};
    double b{0.0};

    // Throws ConfigError unless every eigenvalue is nonnegative.
    void validate() const;
    // 4λ = 1−a−b, 1−a+b, 1+a−b, 1+a+b (in this order, not sorted).
    std::array<double, 4> eigenvalues() const;
};

DensityMatrix example1_state(const Example1Params& p);
// Closed forms at H_A = H_B = σ_z with relaxation time tau on both qubits.
AnticommutatorPair example1_dissipators(const Example1Params& p, double tau = 1.0,
                                        double eps_bln = kEpsBln);

// a_x = a_z = a/√2, b_x = b_z = b/√2, c_x = c_y = c_z = 2(a−b)/3.
struct Example2Params {
    double a{0.0};
    double b{0.0};

    void validate() const;
    // 4λ₁ = 1+a−b, 12λ₂ = 3−a−5b, 12λ₃ = 3+5a+b, 12λ₄ = 3−7a+7b.
    std::array<double, 4> eigenvalues() const;
    // Spectrum of the partial transpose; λ^PT_3,4 carry ±√d with d = 25a² − 14ab + 25b².
    std::array<double, 4> partial_transpose_eigenvalues() const;
};

DensityMatrix example2_state(const Example2Params& p);
AnticommutatorPair example2_dissipators(const Example2Params& p, double tau = 1.0,
                                        double eps_bln = kEpsBln);

enum class Entanglement { separable, entangled };
std::string to_string(Entanglement e);

// From the closed-form partial-transpose spectrum: entangled iff its minimum is negative.
Entanglement example2_entanglement(const Example2Params& p);
// Peres test on a two-qubit state: entangled iff the partial transpose on B has an
// eigenvalue below −tol.
Entanglement ppt_classify(const DensityMatrix& rho, double tol = 1e-12);

// a = b = 0 in the Pauli form. Throws InvalidStateError when an eigenvalue is negative.
DensityMatrix bell_diagonal(const std::array<double, 3>& c);
// 4λ = 1−c_x−c_y−c_z, 1−c_x+c_y+c_z, 1+c_x−c_y+c_z, 1+c_x+c_y−c_z.
std::array<double, 4> bell_diagonal_eigenvalues(const std::array<double, 3>& c);
// c_j = 4w/3 − 1. Valid for w ∈ [0, 1].
DensityMatrix werner(double w);

// Random valid member of the two-qubit Pauli family, deterministic per seed.
PauliState2Q random_pauli_state(std::uint64_t seed);
// Random valid Bell-diagonal coefficient vector (uniform over the tetrahedron).
std::array<double, 3> random_bell_coefficients(std::uint64_t seed);

} // namespace seadyn
