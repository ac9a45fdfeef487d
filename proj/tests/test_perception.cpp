// test_perception.cpp — perception, deviation, covariance and perceived entropy

#include "doctest.h"

#include "oracles.hpp"
#include "support.hpp"

#include "seadyn/composite.hpp"
#include "seadyn/errors.hpp"
#include "seadyn/nosignal.hpp"
#include "seadyn/perception.hpp"
#include "seadyn/presets.hpp"

#include <cmath>
#include <numeric>

using namespace seadyn;
using testing_support::max_abs;
using testing_support::max_diff;

namespace {

double mean_identity_defect(const Matrix& x, const DensityMatrix& rho, const CompositeStructure& s,
                            std::size_t j) {
    const Matrix rj = reduced_state(rho, s, j).matrix();
    const Matrix rr = complement_state(rho, s, j).matrix();
    const auto rest = s.complement(j);
    const std::vector<std::size_t> jj{j};
    const Matrix product = embed(rj, s, jj) * embed(rr, s, rest);
    const double lhs = (rj * perceive(x, rho, s, j).op).trace().real();
    const double rhs = (product * x).trace().real();
    return std::abs(lhs - rhs);
}

} // namespace

TEST_CASE("perceive matches the explicit Kronecker construction") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CompositeStructure s({2, 3});
        const auto rho = random_density(6, 6, seed);
        const Matrix x = random_hermitian(6, seed + 1);
        CHECK(max_diff(perceive(x, rho, s, 0).op, oracle::perceive_a(x, rho.matrix(), 2, 3)) < 1e-13);
        CHECK(max_diff(perceive(x, rho, s, 1).op, oracle::perceive_b(x, rho.matrix(), 2, 3)) < 1e-13);
    }
}

TEST_CASE("perceive: local observable is perceived as itself") {
    CompositeStructure s({2, 2});
    const Matrix xa = random_hermitian(2, 3);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto rho = random_density(4, 1 + seed % 4, seed);
        CHECK(max_diff(perceive(embed_local(xa, 0, s), rho, s, 0).op, xa) < 1e-14);
    }
}

TEST_CASE("perceive: Bln of a Bell-diagonal state is a scalar") {
    // Each Bell projector has marginal I/2 and ρ_J̄ = I/2, so (Bln ρ)^J = ¼ Σ_k Bln(λ_k) I.
    CompositeStructure s({2, 2});
    for (const auto& c : {std::array<double, 3>{-0.3, 0.1, 0.25}, {-1.0, -1.0, -1.0}, {0.2, -0.6, 0.1}}) {
        const auto rho = bell_diagonal(c);
        double sum = 0.0;
        for (double l : bell_diagonal_eigenvalues(c)) sum += bln(l);
        for (std::size_t j : {0u, 1u}) {
            const Matrix p = perceive(matrix_bln(rho), rho, s, j).op;
            CHECK(max_diff(p, 0.25 * sum * identity(2)) < 1e-14);
            CHECK(max_diff(p, oracle::perceive_a(matrix_bln(rho), rho.matrix(), 2, 2)) < 1e-14);
        }
    }
}

TEST_CASE("perceive: mean value identity at 2x2, 2x3 and 2x2x2") {
    for (const auto& dims : {std::vector<std::size_t>{2, 2}, {2, 3}, {2, 2, 2}}) {
        CompositeStructure s(dims);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto rho = random_density(s.total_dim(), s.total_dim(), seed);
            const Matrix x = random_hermitian(s.total_dim(), seed + 99);
            for (std::size_t j = 0; j < dims.size(); ++j) CHECK(mean_identity_defect(x, rho, s, j) < 1e-12);
        }
    }
}

TEST_CASE("deviation: identity, noninteracting H, zero weighted trace") {
    CompositeStructure s({2, 2});
    const auto rho = random_density(4, 4, 5);
    CHECK(max_abs(deviation(identity(4), rho, s, 0)) < 1e-14);

    const Matrix ha = random_hermitian(2, 6);
    const Matrix h = embed_local(ha, 0, s) + embed_local(random_hermitian(2, 7), 1, s);
    const Matrix ra = reduced_state(rho, s, 0).matrix();
    const Matrix expected = ha - identity(2) * (ra * ha).trace().real();
    CHECK(max_diff(deviation(h, rho, s, 0), expected) < 1e-13);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        CompositeStructure s3({2, 3});
        const auto r = random_density(6, 1 + seed % 6, seed);
        const Matrix x = random_hermitian(6, seed + 20);
        for (std::size_t j : {0u, 1u}) {
            const Matrix rj = reduced_state(r, s3, j).matrix();
            CHECK(std::abs((rj * deviation(x, r, s3, j)).trace()) < 1e-12);
        }
    }
}

TEST_CASE("covariance: identity, symmetry, positivity, uncorrelated local form") {
    CompositeStructure s({2, 2});
    const auto rho = random_density(4, 4, 8);
    const Matrix x = random_hermitian(4, 9);
    const Matrix y = random_hermitian(4, 10);
    CHECK(std::abs(covariance(identity(4), x, rho, s, 0)) < 1e-14);
    CHECK(std::abs(covariance(x, y, rho, s, 1) - covariance(y, x, rho, s, 1)) < 1e-14);
    CHECK(covariance(x, x, rho, s, 0) >= 0.0);

    const Matrix ha = random_hermitian(2, 11);
    const Matrix h = embed_local(ha, 0, s) + embed_local(random_hermitian(2, 12), 1, s);
    const auto product = DensityMatrix::from_matrix(
        tensor(random_density(2, 2, 13).matrix(), random_density(2, 2, 14).matrix()));
    const Matrix ra = reduced_state(product, s, 0).matrix();
    const Matrix dh = ha - identity(2) * (ra * ha).trace().real();
    CHECK(std::abs(covariance(h, h, product, s, 0) - (ra * dh * dh).trace().real()) < 1e-13);
}

TEST_CASE("separable observables reduce to their local form on correlated states") {
    CompositeStructure s({2, 3});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto rho = random_density(6, 6, seed + 30);
        const Matrix xa = random_hermitian(2, seed);
        const Matrix xb = random_hermitian(3, seed + 1);
        const Matrix ya = random_hermitian(2, seed + 2);
        const Matrix x = embed_local(xa, 0, s) + embed_local(xb, 1, s);
        const Matrix y = embed_local(ya, 0, s) + embed_local(random_hermitian(3, seed + 3), 1, s);
        const Matrix ra = reduced_state(rho, s, 0).matrix();
        const Matrix dxa = xa - identity(2) * (ra * xa).trace().real();
        const Matrix dya = ya - identity(2) * (ra * ya).trace().real();
        CHECK(max_diff(deviation(x, rho, s, 0), dxa) < 1e-12);
        CHECK(std::abs(covariance(x, y, rho, s, 0) - 0.5 * (ra * (dxa * dya + dya * dxa)).trace().real()) <
              1e-12);
    }
}

TEST_CASE("perceptions of functions of the state are blind to local unitaries on the complement") {
    CompositeStructure s({2, 3});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto rho = random_density(6, 1 + seed % 6, seed + 70);
        const auto moved = apply_local_unitary(rho, random_unitary(3, seed), s, 1);
        CHECK(max_diff(reduced_state(moved, s, 0).matrix(), reduced_state(rho, s, 0).matrix()) < 1e-13);
        const auto funcs = {
            +[](const DensityMatrix& r) { return matrix_bln(r); },
            +[](const DensityMatrix& r) -> Matrix { return r.matrix() * r.matrix(); },
            +[](const DensityMatrix& r) {
                return r.spectrum().apply([](double x) { return std::exp(x) + x * x * x; });
            },
        };
        for (auto f : funcs) {
            CHECK(max_diff(perceive(f(moved), moved, s, 0).op, perceive(f(rho), rho, s, 0).op) < 1e-10);
        }
    }
}

TEST_CASE("perceived entropy: pure, product, correlated") {
    CompositeStructure s({2, 2});
    CHECK(max_abs(perceived_entropy_operator(random_density(4, 1, 3), s, 0).op) < 1e-12);

    const auto ra = random_density(2, 2, 15);
    const auto rb = random_density(2, 2, 16);
    const auto product = DensityMatrix::from_matrix(tensor(ra.matrix(), rb.matrix()));
    const double mean = (ra.matrix() * perceived_entropy_operator(product, s, 0).op).trace().real();
    CHECK(std::abs(mean - von_neumann_entropy(ra) - von_neumann_entropy(rb)) < 1e-12);

    const auto corr = example1_state({0.4, 0.2});
    const auto corr_a = reduced_state(corr, s, 0);
    const double corr_mean = (corr_a.matrix() * perceived_entropy_operator(corr, s, 0).op).trace().real();
    CHECK(std::abs(corr_mean - von_neumann_entropy(corr_a)) > 1e-3);
}

TEST_CASE("perceive rejects mismatched dimensions") {
    CompositeStructure s({2, 2});
    CHECK_THROWS_AS(perceive(identity(3), random_density(4, 4, 1), s, 0), ConfigError);
    CHECK_THROWS_AS(perceive(identity(4), random_density(4, 4, 1), s, 2), ConfigError);
}
