// perception.hpp — local perception, deviation and covariance functionals.
//
// For subsystem J of a composite state ρ:
//
//   (X)^J_ρ      = Tr_J̄[(I_J ⊗ ρ_J̄) X]
//   Δ(X)^J_ρ     = (X)^J_ρ − I_J Tr[ρ_J (X)^J_ρ]
//   (X,Y)^J_ρ    = ½ Tr[ρ_J {Δ(X)^J_ρ, Δ(Y)^J_ρ}]
//
// With more than two subsystems J̄ is treated as one block weighted by ρ_J̄ = Tr_J ρ.

#pragma once

#include "seadyn/linalg.hpp"
#include "seadyn/structure.hpp"

#include <cstddef>
#include <string>

namespace seadyn {

struct PerceptionResult {
    Matrix op;  // on ℋ_J
    std::size_t subsystem{0};
    std::string source_label;
};

// Caches ρ_J and the weight I_J ⊗ ρ_J̄ so that many observables can be perceived
// from the same state without repeating the partial traces.
class PerceptionFrame {
public:
    PerceptionFrame(const DensityMatrix& rho, const CompositeStructure& s, std::size_t j);

    std::size_t subsystem() const noexcept { return j_; }
    const Matrix& local_state() const noexcept { return rho_j_; }
    const Matrix& complement_state() const noexcept { return rho_rest_; }
    // I_J ⊗ ρ_J̄ on the full space.
    const Matrix& weight() const noexcept { return weight_; }

    // X must be a Hermitian operator on the full space.
    Matrix perceive(const Matrix& x) const;
    // Local mean Tr[ρ_J P].
    double mean(const Matrix& perceived) const;
    // Deviation of an already-perceived operator.
    Matrix deviation_of(const Matrix& perceived) const;
    // ½ Tr[ρ_J {ΔX, ΔY}] of two deviation operators.
    double covariance_of(const Matrix& dx, const Matrix& dy) const;

    Matrix deviation(const Matrix& x) const { return deviation_of(perceive(x)); }
    double covariance(const Matrix& x, const Matrix& y) const {
        return covariance_of(deviation(x), deviation(y));
    }

private:
    CompositeStructure structure_;
    std::size_t j_;
    Matrix rho_j_;
    Matrix rho_rest_;
    Matrix weight_;  // I_J ⊗ ρ_J̄ on the full space
};

PerceptionResult perceive(const Matrix& x, const DensityMatrix& rho, const CompositeStructure& s,
                          std::size_t j, std::string source_label = "X");

Matrix deviation(const Matrix& x, const DensityMatrix& rho, const CompositeStructure& s,
                 std::size_t j);

double covariance(const Matrix& x, const Matrix& y, const DensityMatrix& rho,
                  const CompositeStructure& s, std::size_t j);

// (S(ρ))^J_ρ with S(ρ) = −k_B Bln(ρ).
PerceptionResult perceived_entropy_operator(const DensityMatrix& rho, const CompositeStructure& s,
                                            std::size_t j, double k_boltzmann = 1.0,
                                            double eps_bln = kEpsBln);

} // namespace seadyn
