// composite.cpp — composite-system model

#include "seadyn/composite.hpp"

#include "seadyn/errors.hpp"

#include <sstream>
#include <string>

namespace seadyn {

Matrix embed_local(const Matrix& x, std::size_t j, const CompositeStructure& s) {
    s.check_index(j);
    const std::size_t support[] = {j};
    return embed(x, s, support);
}

Matrix assemble_hamiltonian(const HamiltonianSpec& spec, const CompositeStructure& s) {
    if (spec.locals.size() != s.count()) {
        std::ostringstream os;
        os << "hamiltonian.locals: expected " << s.count() << " local Hamiltonians, got "
           << spec.locals.size();
        throw ConfigError(os.str());
    }
    const auto d = static_cast<Eigen::Index>(s.total_dim());
    Matrix h = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < spec.locals.size(); ++j) {
        const auto& hj = spec.locals[j];
        const auto dj = static_cast<Eigen::Index>(s.dim(j));
        if (hj.rows() != dj || hj.cols() != dj) {
            std::ostringstream os;
            os << "hamiltonian.locals[" << j << "]: expected " << dj << "x" << dj << ", got "
               << hj.rows() << "x" << hj.cols();
            throw ConfigError(os.str());
        }
        if (!is_hermitian(hj)) {
            throw ConfigError("hamiltonian.locals[" + std::to_string(j) + "]: not Hermitian");
        }
        h += embed_local(hj, j, s);
    }
    if (spec.interaction.size() != 0) {
        if (spec.interaction.rows() != d || spec.interaction.cols() != d) {
            std::ostringstream os;
            os << "hamiltonian.interaction: expected " << d << "x" << d << ", got "
               << spec.interaction.rows() << "x" << spec.interaction.cols();
            throw ConfigError(os.str());
        }
        if (!is_hermitian(spec.interaction)) {
            throw ConfigError("hamiltonian.interaction: not Hermitian");
        }
        h += spec.interaction;
    }
    return h;
}

CompositeModel::CompositeModel(CompositeStructure structure, HamiltonianSpec spec, double hbar)
    : structure_(std::move(structure)), spec_(std::move(spec)), hbar_(hbar) {
    if (!(hbar_ > 0.0)) throw ConfigError("hbar: must be positive");
    hamiltonian_ = assemble_hamiltonian(spec_, structure_);
    const auto d = static_cast<Eigen::Index>(structure_.total_dim());
    interaction_ = spec_.interaction.size() == 0 ? Matrix::Zero(d, d) : spec_.interaction;
}

const Matrix& CompositeModel::local_hamiltonian(std::size_t j) const {
    structure_.check_index(j);
    return spec_.locals[j];
}

DensityMatrix reduced_state(const DensityMatrix& rho, const CompositeStructure& s, std::size_t j) {
    const std::size_t kept[] = {j};
    s.check_index(j);
    return DensityMatrix::trusted(partial_trace_keep(rho.matrix(), s, kept));
}

DensityMatrix complement_state(const DensityMatrix& rho, const CompositeStructure& s,
                               std::size_t j) {
    const std::size_t traced[] = {j};
    s.check_index(j);
    return DensityMatrix::trusted(partial_trace(rho.matrix(), s, traced));
}

InteractionSplit interaction_split(const Matrix& h, std::size_t j, const CompositeStructure& s) {
    s.check_index(j);
    const auto rest = s.complement(j);
    const double dj = static_cast<double>(s.dim(j));
    const double dr = static_cast<double>(s.dim_of(rest));
    const double d = static_cast<double>(s.total_dim());
    const cplx shift = h.trace() / (2.0 * d);

    const std::size_t only_j[] = {j};
    InteractionSplit out;
    out.local = partial_trace(h, s, rest) / dr - shift * identity(s.dim(j));
    out.complement = partial_trace(h, s, only_j) / dj - shift * identity(s.dim_of(rest));
    out.residual = h - embed(out.local, s, only_j) - embed(out.complement, s, rest);
    return out;
}

bool is_noninteracting(const Matrix& h, std::size_t j, const CompositeStructure& s, double tol) {
    const auto split = interaction_split(h, j, s);
    return split.residual.norm() < tol * std::max(1.0, h.norm());
}

DensityMatrix assemble_pauli_state(const PauliState2Q& p, double clip_tol) {
    const Matrix paulis[3] = {sigma_x(), sigma_y(), sigma_z()};
    const Matrix i2 = identity(2);
    Matrix rho = identity(4);
    for (int k = 0; k < 3; ++k) {
        rho += p.a[k] * tensor(paulis[k], i2) + p.b[k] * tensor(i2, paulis[k]) +
               p.c[k] * tensor(paulis[k], paulis[k]);
    }
    rho /= 4.0;
    const double lmin = herm_eig(rho).eigenvalues.minCoeff();
    if (lmin < -clip_tol) {
        std::ostringstream os;
        os << "pauli state is not positive (minimum eigenvalue " << lmin << ")";
        throw InvalidStateError(os.str());
    }
    return DensityMatrix::trusted(rho);
}

std::array<double, 3> bloch_vector(const Matrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw ConfigError("bloch_vector: expected a 2x2 operator");
    return {real_trace_product(m, sigma_x()), real_trace_product(m, sigma_y()),
            real_trace_product(m, sigma_z())};
}

std::array<double, 4> pauli_components(const Matrix& m) {
    const auto v = bloch_vector(m);
    return {m.trace().real(), v[0], v[1], v[2]};
}

} // namespace seadyn
