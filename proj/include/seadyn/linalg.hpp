// linalg.hpp — dense complex-matrix kernel: Kronecker products, partial traces,
// Hermitian spectral decomposition, matrix functions, state projection and
// random states/unitaries.

#pragma once

#include "seadyn/structure.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace seadyn {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;   // relative Frobenius
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kClipTol = 1e-10;
inline constexpr double kEpsBln = 1e-14;
inline constexpr double kProjectionTraceTol = 1e-6;

// --------------------------- small operators --------------------------------

Matrix identity(std::size_t d);
Matrix sigma_x();
Matrix sigma_y();
Matrix sigma_z();

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
inline Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

// Re Tr(A B) without forming the product.
double real_trace_product(const Matrix& a, const Matrix& b);

// ‖M − M†‖_F / ‖M‖_F (0 for the zero matrix).
double hermiticity_defect(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kHermTol);
inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

bool is_unitary(const Matrix& u, double tol = 1e-12);

// --------------------------- tensor structure -------------------------------

Matrix tensor(const Matrix& a, const Matrix& b);
Matrix tensor(std::initializer_list<Matrix> factors);

// Traces out the listed factors; the result acts on the remaining factors in ascending order.
Matrix partial_trace(const Matrix& m, const CompositeStructure& s,
                     std::span<const std::size_t> traced);

// Keeps only the listed factors (ascending order required), tracing the rest.
Matrix partial_trace_keep(const Matrix& m, const CompositeStructure& s,
                          std::span<const std::size_t> kept);

// `op` acts on the factors in `support` (taken in the given order) and as identity elsewhere.
Matrix embed(const Matrix& op, const CompositeStructure& s, std::span<const std::size_t> support);

// Transposes the indices of factor j only.
Matrix partial_transpose(const Matrix& m, const CompositeStructure& s, std::size_t j);

// --------------------------- spectral calculus ------------------------------

struct SpectralDecomposition {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // columns, unitary

    Matrix reconstruct() const;

    // V f(Λ) V† for a real scalar function.
    template <class F>
    Matrix apply(F&& f) const {
        const auto n = eigenvalues.size();
        Eigen::VectorXcd fx(n);
        for (Eigen::Index k = 0; k < n; ++k) fx(k) = cplx(f(eigenvalues(k)), 0.0);
        return eigenvectors * fx.asDiagonal() * eigenvectors.adjoint();
    }
};

// Throws NumericalError when the solver does not converge.
SpectralDecomposition herm_eig(const Matrix& m);

// Bln(x) = ln x for x > eps, 0 otherwise.
double bln(double x, double eps_bln = kEpsBln) noexcept;

// ----------------------------- density matrix -------------------------------

// Hermitian, unit-trace, positive semidefinite (to clip_tol).
class DensityMatrix {
public:
    // Validates; throws InvalidStateError naming the failed check.
    static DensityMatrix from_matrix(Matrix m, double herm_tol = kHermTol,
                                     double trace_tol = kTraceTol, double clip_tol = kClipTol);

    // For integrator stage states that are known to be close to valid; hermitizes only.
    static DensityMatrix trusted(const Matrix& m) { return DensityMatrix(hermitian_part(m)); }

    const Matrix& matrix() const noexcept { return rho_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
    SpectralDecomposition spectrum() const { return herm_eig(rho_); }

private:
    explicit DensityMatrix(Matrix m) : rho_(std::move(m)) {}
    Matrix rho_;
};

// Bln applied through the spectrum of rho.
Matrix matrix_bln(const DensityMatrix& rho, double eps_bln = kEpsBln);
Matrix matrix_bln(const SpectralDecomposition& spectrum, double eps_bln = kEpsBln);

// Hermitize, clip eigenvalues in [−clip_tol, zero_floor] to zero and renormalize.
// Throws NumericalError for an eigenvalue below −clip_tol or a trace off by more than 1e-6.
DensityMatrix project_to_state(const Matrix& m, double clip_tol = kClipTol,
                               double zero_floor = 0.0);

// −Tr ρ ln ρ (units of k_B).
double von_neumann_entropy(const DensityMatrix& rho, double eps_bln = kEpsBln);

// ----------------------------- random ensembles -----------------------------

// Ginibre construction ρ = G G† / Tr(G G†) with G of shape dim × rank.
DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);
// QR of a complex Ginibre matrix with the phase fix, Haar distributed.
Matrix random_unitary(std::size_t dim, std::uint64_t seed);
// (G + G†)/2 with standard complex Gaussian entries.
Matrix random_hermitian(std::size_t dim, std::uint64_t seed);

} // namespace seadyn
