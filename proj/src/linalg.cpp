// linalg.cpp — dense complex-matrix kernel

#include "seadyn/linalg.hpp"

#include "seadyn/errors.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace seadyn {

Matrix identity(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return Matrix::Identity(n, n);
}

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0,
         1.0, 0.0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, cplx(0.0, -1.0),
         cplx(0.0, 1.0), 0.0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0,
         0.0, -1.0;
    return m;
}

double real_trace_product(const Matrix& a, const Matrix& b) {
    // Tr(AB) = Σ_ij A_ij B_ji
    return (a.array() * b.transpose().array()).sum().real();
}

double hermiticity_defect(const Matrix& m) {
    const double norm = m.norm();
    if (norm == 0.0) return 0.0;
    return (m - m.adjoint()).norm() / norm;
}

bool is_hermitian(const Matrix& m, double tol) {
    return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

bool is_unitary(const Matrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() <= tol;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

Matrix tensor(std::initializer_list<Matrix> factors) {
    Matrix out = Matrix::Identity(1, 1);
    for (const auto& f : factors) out = tensor(out, f);
    return out;
}

namespace {

void check_square(const Matrix& m, const CompositeStructure& s, const char* what) {
    const auto d = static_cast<Eigen::Index>(s.total_dim());
    if (m.rows() != d || m.cols() != d) {
        std::ostringstream os;
        os << what << ": matrix is " << m.rows() << "x" << m.cols()
           << " but structure has total dimension " << d;
        throw ConfigError(os.str());
    }
}

} // namespace

Matrix partial_trace_keep(const Matrix& m, const CompositeStructure& s,
                          std::span<const std::size_t> kept) {
    check_square(m, s, "partial_trace");
    for (std::size_t k = 1; k < kept.size(); ++k) {
        if (kept[k] <= kept[k - 1]) throw ConfigError("partial_trace: kept factors must be ascending");
    }
    const auto traced = s.complement(kept);
    const std::size_t d = s.total_dim();
    const auto dk = static_cast<Eigen::Index>(s.dim_of(kept));

    std::vector<std::size_t> kidx(d), tidx(d);
    for (std::size_t i = 0; i < d; ++i) {
        kidx[i] = s.project_index(i, kept);
        tidx[i] = s.project_index(i, traced);
    }
    Matrix out = Matrix::Zero(dk, dk);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            if (tidx[i] == tidx[j]) {
                out(static_cast<Eigen::Index>(kidx[i]), static_cast<Eigen::Index>(kidx[j])) +=
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
    }
    return out;
}

Matrix partial_trace(const Matrix& m, const CompositeStructure& s,
                     std::span<const std::size_t> traced) {
    return partial_trace_keep(m, s, s.complement(traced));
}

Matrix embed(const Matrix& op, const CompositeStructure& s, std::span<const std::size_t> support) {
    const auto ds = s.dim_of(support);
    if (static_cast<std::size_t>(op.rows()) != ds || static_cast<std::size_t>(op.cols()) != ds) {
        std::ostringstream os;
        os << "embed: operator is " << op.rows() << "x" << op.cols() << " but support dimension is "
           << ds;
        throw ConfigError(os.str());
    }
    const auto rest = s.complement(support);
    const std::size_t d = s.total_dim();
    std::vector<std::size_t> sidx(d), ridx(d);
    for (std::size_t i = 0; i < d; ++i) {
        sidx[i] = s.project_index(i, support);
        ridx[i] = s.project_index(i, rest);
    }
    const auto n = static_cast<Eigen::Index>(d);
    Matrix out = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            if (ridx[i] == ridx[j]) {
                out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    op(static_cast<Eigen::Index>(sidx[i]), static_cast<Eigen::Index>(sidx[j]));
            }
        }
    }
    return out;
}

Matrix partial_transpose(const Matrix& m, const CompositeStructure& s, std::size_t j) {
    check_square(m, s, "partial_transpose");
    s.check_index(j);
    const std::size_t d = s.total_dim();
    const auto n = static_cast<Eigen::Index>(d);
    Matrix out(n, n);
    for (std::size_t r = 0; r < d; ++r) {
        const auto rd = s.digits(r);
        for (std::size_t c = 0; c < d; ++c) {
            auto rd2 = rd;
            auto cd2 = s.digits(c);
            std::swap(rd2[j], cd2[j]);
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                m(static_cast<Eigen::Index>(s.compose(rd2)), static_cast<Eigen::Index>(s.compose(cd2)));
        }
    }
    return out;
}

Matrix SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition herm_eig(const Matrix& m) {
    if (m.rows() != m.cols()) throw ConfigError("herm_eig: matrix must be square");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
    if (solver.info() != Eigen::Success) {
        std::ostringstream os;
        os << "herm_eig: eigensolver did not converge (dim " << m.rows() << ", ‖M‖_F = " << m.norm()
           << ", hermiticity defect " << hermiticity_defect(m) << ")";
        throw NumericalError(os.str());
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double bln(double x, double eps_bln) noexcept {
    return x > eps_bln ? std::log(x) : 0.0;
}

DensityMatrix DensityMatrix::from_matrix(Matrix m, double herm_tol, double trace_tol,
                                         double clip_tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidStateError("density matrix must be square and non-empty");
    }
    if (!is_hermitian(m, herm_tol)) {
        std::ostringstream os;
        os << "density matrix is not Hermitian (relative defect " << hermiticity_defect(m) << ")";
        throw InvalidStateError(os.str());
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > trace_tol) {
        std::ostringstream os;
        os.precision(17);
        os << "density matrix trace is " << tr << ", expected 1";
        throw InvalidStateError(os.str());
    }
    const double lmin = herm_eig(m).eigenvalues.minCoeff();
    if (lmin < -clip_tol) {
        std::ostringstream os;
        os << "density matrix has negative eigenvalue " << lmin;
        throw InvalidStateError(os.str());
    }
    return DensityMatrix(hermitian_part(m));
}

Matrix matrix_bln(const SpectralDecomposition& spectrum, double eps_bln) {
    return spectrum.apply([eps_bln](double x) { return bln(x, eps_bln); });
}

Matrix matrix_bln(const DensityMatrix& rho, double eps_bln) {
    return matrix_bln(rho.spectrum(), eps_bln);
}

DensityMatrix project_to_state(const Matrix& m, double clip_tol, double zero_floor) {
    if (m.rows() != m.cols() || m.rows() == 0) throw ConfigError("project_to_state: matrix must be square");
    const Matrix h = hermitian_part(m);
    const double tr = h.trace().real();
    if (!std::isfinite(tr) || std::abs(tr - 1.0) > kProjectionTraceTol) {
        std::ostringstream os;
        os.precision(17);
        os << "project_to_state: trace drifted to " << tr;
        throw NumericalError(os.str());
    }
    auto sd = herm_eig(h);
    const double lmin = sd.eigenvalues.minCoeff();
    if (lmin < -clip_tol) {
        std::ostringstream os;
        os << "project_to_state: eigenvalue " << lmin << " below -" << clip_tol
           << " (positivity blow-up)";
        throw NumericalError(os.str());
    }
    if (lmin > zero_floor) {
        return DensityMatrix::trusted(h / tr);
    }
    for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
        if (sd.eigenvalues(k) <= zero_floor) sd.eigenvalues(k) = 0.0;
    }
    sd.eigenvalues /= sd.eigenvalues.sum();
    return DensityMatrix::trusted(sd.reconstruct());
}

double von_neumann_entropy(const DensityMatrix& rho, double eps_bln) {
    const auto ev = rho.spectrum().eigenvalues;
    double s = 0.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) s -= ev(k) * bln(ev(k), eps_bln);
    return s;
}

namespace {

Matrix ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = cplx(re, im);
        }
    }
    return g;
}

} // namespace

DensityMatrix random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    if (dim == 0 || rank == 0 || rank > dim) {
        throw ConfigError("random_density: rank must satisfy 1 <= rank <= dim (got rank " +
                          std::to_string(rank) + ", dim " + std::to_string(dim) + ")");
    }
    std::mt19937_64 rng(seed);
    const Matrix g = ginibre(dim, rank, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix::trusted(rho);
}

Matrix random_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) throw ConfigError("random_unitary: dim must be positive");
    std::mt19937_64 rng(seed);
    const Matrix g = ginibre(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const double mag = std::abs(r(k, k));
        if (mag > 0.0) q.col(k) *= r(k, k) / mag;
    }
    return q;
}

Matrix random_hermitian(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Matrix g = ginibre(dim, dim, rng);
    return hermitian_part(g);
}

} // namespace seadyn
