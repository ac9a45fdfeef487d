// sea.cpp — SEA dissipators, composite right-hand side and entropy production

#include "seadyn/sea.hpp"

#include "seadyn/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace seadyn {

ConservedSet ConservedSet::standard(const CompositeModel& model) {
    return {{identity(model.dim()), model.hamiltonian()}};
}

ConservedSet ConservedSet::with_extras(const CompositeModel& model, std::vector<Matrix> extras) {
    auto set = standard(model);
    for (auto& c : extras) set.operators.push_back(std::move(c));
    return set;
}

void ConservedSet::validate(std::size_t dim) const {
    const auto d = static_cast<Eigen::Index>(dim);
    if (operators.empty()) throw ConfigError("sea.conserved: the identity must be the first entry");
    for (std::size_t k = 0; k < operators.size(); ++k) {
        const auto& c = operators[k];
        if (c.rows() != d || c.cols() != d) {
            std::ostringstream os;
            os << "sea.conserved[" << k << "]: expected " << d << "x" << d << ", got " << c.rows()
               << "x" << c.cols();
            throw ConfigError(os.str());
        }
        if (!is_hermitian(c)) {
            throw ConfigError("sea.conserved[" + std::to_string(k) + "]: not Hermitian");
        }
    }
    if ((operators.front() - Matrix::Identity(d, d)).norm() > 1e-12) {
        throw ConfigError("sea.conserved[0]: must be the identity");
    }
}

SeaParams SeaParams::standard(const CompositeModel& model, double tau) {
    SeaParams p;
    p.tau.assign(model.structure().count(), tau);
    p.conserved = ConservedSet::standard(model);
    return p;
}

void SeaParams::validate(const CompositeModel& model) const {
    if (tau.size() != model.structure().count()) {
        std::ostringstream os;
        os << "sea.tau: expected " << model.structure().count() << " entries, got " << tau.size();
        throw ConfigError(os.str());
    }
    for (std::size_t j = 0; j < tau.size(); ++j) {
        if (!(tau[j] > 0.0) || !std::isfinite(tau[j])) {
            throw ConfigError("sea.tau[" + std::to_string(j) + "]: must be positive and finite");
        }
    }
    if (!(gram_rcond > 0.0)) throw ConfigError("sea.gram_rcond: must be positive");
    if (!(eps_bln >= 0.0)) throw ConfigError("sea.eps_bln: must be non-negative");
    conserved.validate(model.dim());
}

namespace {

struct LocalSolve {
    DissipatorResult result;
    double gram_entropy{0.0};  // (B,B) − rᵀ G⁺ r, before the k_B / 2τ factor
    double eq13_entropy{0.0};  // Tr[{D, ρ_J} (Bln ρ)^J], before the k_B factor
    Matrix weight;             // I_J ⊗ ρ_J̄
};

LocalSolve solve_local(const DensityMatrix& rho, const Matrix& bln_full,
                       const CompositeModel& model, std::size_t j, const SeaParams& params) {
    const PerceptionFrame frame(rho, model.structure(), j);
    const auto& ops = params.conserved.operators;
    const std::size_t n = ops.size() - 1;  // constraints beyond the identity

    const Matrix bln_perceived = frame.perceive(bln_full);
    const Matrix dbln = frame.deviation_of(bln_perceived);

    std::vector<Matrix> dc(n);
    RealVector means(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const Matrix pk = frame.perceive(ops[k + 1]);
        means(static_cast<Eigen::Index>(k)) = frame.mean(pk);
        dc[k] = frame.deviation_of(pk);
    }

    // The identity constraint fixes β_1 and leaves the covariance system
    //   Σ_ℓ β_ℓ (C_ℓ, C_k)^J = −(Bln ρ, C_k)^J  for k ≥ 2.
    const auto ni = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd gram(ni, ni);
    RealVector rhs(ni);
    for (Eigen::Index k = 0; k < ni; ++k) {
        rhs(k) = frame.covariance_of(dbln, dc[static_cast<std::size_t>(k)]);
        for (Eigen::Index l = 0; l <= k; ++l) {
            gram(k, l) = frame.covariance_of(dc[static_cast<std::size_t>(k)],
                                             dc[static_cast<std::size_t>(l)]);
            gram(l, k) = gram(k, l);
        }
    }

    RealVector beta_rest = RealVector::Zero(ni);
    double condition = 1.0;
    std::size_t rank = 0;
    if (n > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        const auto& ev = es.eigenvalues();
        const double lmax = ev.maxCoeff();
        const double cutoff = params.gram_rcond * std::max(1.0, lmax);
        const double lmin = ev.minCoeff();
        condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < ni; ++k) {
            if (ev(k) > cutoff) {
                const auto v = es.eigenvectors().col(k);
                beta_rest -= v * (v.dot(rhs) / ev(k));
                ++rank;
            }
        }
    }

    const double tau = params.tau[j];
    Matrix four_tau_d = dbln;
    for (std::size_t k = 0; k < n; ++k) four_tau_d += beta_rest(static_cast<Eigen::Index>(k)) * dc[k];

    LocalSolve out;
    auto& r = out.result;
    r.subsystem = j;
    r.dissipator = four_tau_d / (4.0 * tau);
    r.multipliers.resize(ni + 1);
    r.multipliers(0) = -frame.mean(bln_perceived) - beta_rest.dot(means);
    r.multipliers.tail(ni) = beta_rest;
    r.anticommutator_term = anticommutator(r.dissipator, frame.local_state());
    r.gram_condition = condition;
    r.gram_rank = rank;

    out.gram_entropy = frame.covariance_of(dbln, dbln) + beta_rest.dot(rhs);
    out.eq13_entropy = real_trace_product(r.anticommutator_term, bln_perceived);
    out.weight = frame.weight();
    return out;
}

Matrix hamiltonian_term(const DensityMatrix& rho, const CompositeModel& model) {
    return cplx(0.0, -1.0 / model.hbar()) * commutator(model.hamiltonian(), rho.matrix());
}

void check_state(const DensityMatrix& rho, const CompositeModel& model) {
    if (rho.dim() != model.dim()) {
        std::ostringstream os;
        os << "state dimension " << rho.dim() << " does not match model dimension " << model.dim();
        throw ConfigError(os.str());
    }
}

} // namespace

RealVector solve_multipliers(const DensityMatrix& rho, const CompositeModel& model,
                             std::size_t j, const SeaParams& params) {
    return dissipator(rho, model, j, params).multipliers;
}

DissipatorResult dissipator(const DensityMatrix& rho, const CompositeModel& model, std::size_t j,
                            const SeaParams& params) {
    check_state(rho, model);
    params.validate(model);
    model.structure().check_index(j);
    return solve_local(rho, matrix_bln(rho, params.eps_bln), model, j, params).result;
}

Matrix dissipator_compact(const DensityMatrix& rho, const CompositeModel& model, std::size_t j,
                          double tau, double rcond, double eps_bln) {
    check_state(rho, model);
    if (!(tau > 0.0)) throw ConfigError("dissipator_compact: tau must be positive");
    const PerceptionFrame frame(rho, model.structure(), j);
    const Matrix dbln = frame.deviation(matrix_bln(rho, eps_bln));
    const Matrix dh = frame.deviation(model.hamiltonian());
    const double hh = frame.covariance_of(dh, dh);
    const double hb = frame.covariance_of(dh, dbln);
    if (!(hh > rcond)) {
        std::ostringstream os;
        os << "dissipator_compact: (H,H) = " << hh << " on subsystem " << j
           << " is below the cutoff " << rcond;
        throw DegenerateHamiltonianError(os.str());
    }
    const Matrix det = dbln * hh - dh * hb;
    return det / (4.0 * tau * hh);
}

SeaEvaluation evaluate(const DensityMatrix& rho, const CompositeModel& model,
                       const SeaParams& params) {
    check_state(rho, model);
    params.validate(model);
    const auto& s = model.structure();
    const Matrix bln_full = matrix_bln(rho, params.eps_bln);

    SeaEvaluation ev;
    ev.hamiltonian_part = hamiltonian_term(rho, model);
    const auto d = static_cast<Eigen::Index>(model.dim());
    ev.dissipative_part = Matrix::Zero(d, d);
    ev.entropy.per_subsystem.resize(s.count());
    ev.entropy.per_subsystem_gram.resize(s.count());
    for (std::size_t j = 0; j < s.count(); ++j) {
        auto local = solve_local(rho, bln_full, model, j, params);
        ev.dissipative_part -= embed_local(local.result.anticommutator_term, j, s) * local.weight;
        ev.entropy.per_subsystem[j] = params.k_boltzmann * local.eq13_entropy;
        ev.entropy.per_subsystem_gram[j] =
            params.k_boltzmann * local.gram_entropy / (2.0 * params.tau[j]);
        ev.entropy.total += ev.entropy.per_subsystem[j];
        ev.entropy.total_gram += ev.entropy.per_subsystem_gram[j];
        ev.dissipators.push_back(std::move(local.result));
    }
    ev.rhs = ev.hamiltonian_part + ev.dissipative_part;
    return ev;
}

Matrix sea_rhs(const DensityMatrix& rho, const CompositeModel& model, const SeaParams& params) {
    return evaluate(rho, model, params).rhs;
}

Matrix local_rhs(const DensityMatrix& rho, std::size_t j, const CompositeModel& model,
                 const SeaParams& params) {
    const auto& s = model.structure();
    const auto d = dissipator(rho, model, j, params);
    const auto rest = s.complement(j);
    const Matrix rho_j = partial_trace(rho.matrix(), s, rest);
    const cplx minus_i_over_hbar(0.0, -1.0 / model.hbar());
    return minus_i_over_hbar * commutator(model.local_hamiltonian(j), rho_j) +
           minus_i_over_hbar *
               partial_trace(commutator(model.interaction(), rho.matrix()), s, rest) -
           d.anticommutator_term;
}

EntropyProduction entropy_production(const DensityMatrix& rho, const CompositeModel& model,
                                     const SeaParams& params) {
    return evaluate(rho, model, params).entropy;
}

} // namespace seadyn
