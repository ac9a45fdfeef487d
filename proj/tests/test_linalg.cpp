// test_linalg.cpp — tensor products, partial traces, spectral calculus, projection, random states

#include "doctest.h"

#include "oracles.hpp"
#include "support.hpp"

#include "seadyn/errors.hpp"
#include "seadyn/linalg.hpp"
#include "seadyn/structure.hpp"

#include <cmath>
#include <vector>

using namespace seadyn;
using testing_support::diag;
using testing_support::max_diff;

TEST_CASE("structure: digits and compose are inverse with subsystem 0 slowest") {
    CompositeStructure s({2, 3, 2});
    CHECK(s.total_dim() == 12);
    CHECK(s.digits(7) == std::vector<std::size_t>{1, 0, 1});
    for (std::size_t i = 0; i < 12; ++i) CHECK(s.compose(s.digits(i)) == i);
    CHECK(s.complement(1) == std::vector<std::size_t>{0, 2});
    CHECK_THROWS_AS(s.check_index(3), ConfigError);
    CHECK_THROWS_AS(CompositeStructure({2, 0}), ConfigError);
    CHECK_THROWS_AS(CompositeStructure({}), ConfigError);
    CHECK_THROWS_AS(CompositeStructure({16, 17}), ConfigError);
}

TEST_CASE("tensor: identity, Pauli and diagonal cases") {
    CHECK(max_diff(tensor(identity(2), identity(2)), identity(4)) == 0.0);
    Matrix anti = Matrix::Zero(4, 4);
    for (int k = 0; k < 4; ++k) anti(k, 3 - k) = 1.0;
    CHECK(max_diff(tensor(sigma_x(), sigma_x()), anti) == 0.0);
    CHECK(max_diff(tensor(diag({1, 2}), diag({3, 4})), diag({3, 4, 6, 8})) == 0.0);
}

TEST_CASE("partial_trace: product marginal, Bell marginal, tripartite index-sum oracle") {
    CompositeStructure s2({2, 2});
    const Matrix ra = random_density(2, 2, 1).matrix();
    const Matrix rb = random_density(2, 2, 2).matrix();
    const std::vector<std::size_t> b{1};
    CHECK(max_diff(partial_trace(tensor(ra, rb), s2, b), ra) < 1e-14);

    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    const Matrix bell = phi * phi.adjoint();
    CHECK(max_diff(partial_trace(bell, s2, b), 0.5 * identity(2)) < 1e-15);

    CompositeStructure s3({2, 2, 2});
    const Matrix rho = random_density(8, 8, 3).matrix();
    Matrix brute = Matrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) brute(i, j) += rho(4 * i + 2 * k + l, 4 * j + 2 * k + l);
    const std::vector<std::size_t> bc{1, 2};
    CHECK(max_diff(partial_trace(rho, s3, bc), brute) < 1e-15);
}

TEST_CASE("partial_trace: linear, trace preserving and A·Tr(B) on products") {
    CompositeStructure s({2, 3});
    const std::vector<std::size_t> b{1};
    const std::vector<std::size_t> a{0};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix m = random_hermitian(6, seed) + cplx(0, 1) * random_hermitian(6, seed + 100);
        const Matrix n = random_hermitian(6, seed + 200);
        CHECK(std::abs(partial_trace(m, s, b).trace() - m.trace()) < 1e-12);
        CHECK(std::abs(partial_trace(m, s, a).trace() - m.trace()) < 1e-12);
        CHECK(max_diff(partial_trace(2.0 * m - n, s, b),
                       2.0 * partial_trace(m, s, b) - partial_trace(n, s, b)) < 1e-12);
        const Matrix x = random_hermitian(2, seed + 300);
        const Matrix y = random_hermitian(3, seed + 400);
        CHECK(max_diff(partial_trace(tensor(x, y), s, b), x * y.trace()) < 1e-12);
        CHECK(max_diff(partial_trace(m, s, b), oracle::trace_b(m, 2, 3)) < 1e-13);
        CHECK(max_diff(partial_trace(m, s, a), oracle::trace_a(m, 2, 3)) < 1e-13);
    }
}

TEST_CASE("partial_trace: dimension mismatch and bad index are rejected") {
    CompositeStructure s({2, 2});
    const std::vector<std::size_t> b{1};
    const std::vector<std::size_t> bad{2};
    CHECK_THROWS_AS(partial_trace(identity(3), s, b), ConfigError);
    CHECK_THROWS_AS(partial_trace(identity(4), s, bad), ConfigError);
}

TEST_CASE("herm_eig: eigenvalues of known states and reconstruction up to dim 64") {
    const auto ev = herm_eig(identity(4) / 4.0).eigenvalues;
    for (int k = 0; k < 4; ++k) CHECK(ev(k) == doctest::Approx(0.25).epsilon(1e-15));

    for (std::size_t d : {2u, 5u, 16u, 64u}) {
        const Matrix m = random_hermitian(d, d);
        const auto sd = herm_eig(m);
        CHECK((sd.reconstruct() - m).norm() / m.norm() < 1e-10);
        CHECK(is_unitary(sd.eigenvectors, 1e-10));
        for (Eigen::Index k = 1; k < sd.eigenvalues.size(); ++k)
            CHECK(sd.eigenvalues(k) >= sd.eigenvalues(k - 1));
    }
}

TEST_CASE("matrix_bln: pure, maximally mixed, diagonal and rank-deficient") {
    const auto pure = random_density(4, 1, 9);
    CHECK(testing_support::max_abs(matrix_bln(pure)) < 1e-12);
    const auto mixed = DensityMatrix::from_matrix(identity(3) / 3.0);
    CHECK(max_diff(matrix_bln(mixed), std::log(1.0 / 3.0) * identity(3)) < 1e-14);
    const auto d = DensityMatrix::from_matrix(diag({0.5, 0.3, 0.2, 0.0}));
    CHECK(max_diff(matrix_bln(d), diag({std::log(0.5), std::log(0.3), std::log(0.2), 0.0})) < 1e-14);
    CHECK(bln(1e-15) == 0.0);
    CHECK(bln(0.0) == 0.0);
    CHECK(bln(0.5) == std::log(0.5));
}

TEST_CASE("matrix_bln: agrees with the matrix logarithm on full-rank states") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto rho = random_density(4, 4, seed);
        CHECK(max_diff(matrix_bln(rho), oracle::log_full_rank(rho.matrix())) < 1e-10);
    }
}

TEST_CASE("matrix_bln: commutes with unitary conjugation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rho = random_density(6, 1 + seed % 6, seed);
        const Matrix u = random_unitary(6, seed + 50);
        const auto rotated = DensityMatrix::trusted(u * rho.matrix() * u.adjoint());
        CHECK(max_diff(matrix_bln(rotated), u * matrix_bln(rho) * u.adjoint()) < 1e-10);
    }
}

TEST_CASE("project_to_state: identity on valid states, hermitizes, clips small negatives") {
    const auto rho = random_density(4, 3, 4);
    CHECK(max_diff(project_to_state(rho.matrix()).matrix(), rho.matrix()) < 1e-14);

    const Matrix a = random_hermitian(4, 5);
    const Matrix noisy = rho.matrix() + 1e-12 * cplx(0, 1) * a;
    const auto p = project_to_state(noisy);
    CHECK(is_hermitian(p.matrix()));
    CHECK(hermiticity_defect(p.matrix()) == 0.0);

    const auto clipped = project_to_state(diag({1 + 5e-11, -5e-11}));
    CHECK(max_diff(clipped.matrix(), diag({1, 0})) < 1e-15);

    CHECK_THROWS_AS(project_to_state(diag({1.1, -0.1})), NumericalError);
    CHECK_THROWS_AS(project_to_state(diag({0.6, 0.6})), NumericalError);
}

TEST_CASE("DensityMatrix validation names the failed check") {
    CHECK_THROWS_WITH_AS(DensityMatrix::from_matrix(diag({0.6, 0.6})),
                         doctest::Contains("trace"), InvalidStateError);
    CHECK_THROWS_WITH_AS(DensityMatrix::from_matrix(diag({1.2, -0.2})),
                         doctest::Contains("negative"), InvalidStateError);
    Matrix m = diag({0.5, 0.5});
    m(0, 1) = 0.3;
    CHECK_THROWS_WITH_AS(DensityMatrix::from_matrix(m), doctest::Contains("Hermitian"),
                         InvalidStateError);
}

TEST_CASE("random_density and random_unitary contracts") {
    const auto pure = random_density(4, 1, 11);
    const auto ev = pure.spectrum().eigenvalues;
    CHECK(ev(3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ev(0)) < 1e-12);

    const auto full = random_density(4, 4, 12);
    CHECK(std::abs(full.spectrum().eigenvalues.sum() - 1.0) < 1e-12);
    CHECK(full.spectrum().eigenvalues.minCoeff() > 0.0);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Matrix u = random_unitary(2, seed);
        CHECK((u.adjoint() * u - identity(2)).norm() < 1e-12);
    }
    CHECK(max_diff(random_density(3, 2, 7).matrix(), random_density(3, 2, 7).matrix()) == 0.0);
    CHECK(max_diff(random_unitary(3, 7), random_unitary(3, 7)) == 0.0);
    CHECK_THROWS_AS(random_density(3, 4, 0), ConfigError);
    CHECK_THROWS_AS(random_density(3, 0, 0), ConfigError);
}

TEST_CASE("partial_transpose swaps the indices of one factor") {
    CompositeStructure s({2, 2});
    Eigen::VectorXcd phi = Eigen::VectorXcd::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    const Matrix pt = partial_transpose(phi * phi.adjoint(), s, 1);
    const auto ev = herm_eig(pt).eigenvalues;
    CHECK(ev(0) == doctest::Approx(-0.5));
    CHECK(ev(3) == doctest::Approx(0.5));
    const Matrix m = random_hermitian(4, 3);
    CHECK(max_diff(partial_transpose(partial_transpose(m, s, 1), s, 1), m) == 0.0);
}
