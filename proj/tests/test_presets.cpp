// test_presets.cpp — closed-form example states and dissipators against the engine

#include "doctest.h"

#include "support.hpp"

#include "seadyn/composite.hpp"
#include "seadyn/errors.hpp"
#include "seadyn/presets.hpp"
#include "seadyn/sea.hpp"

#include <cmath>

using namespace seadyn;
using testing_support::max_abs;
using testing_support::max_diff;
using testing_support::sorted;
using testing_support::spectrum;

namespace {

// Off-σ_x content of a 2×2 operator.
double non_x_content(const Matrix& m) {
    const auto c = pauli_components(m);
    return std::max({std::abs(c[0]), std::abs(c[2]), std::abs(c[3])});
}

} // namespace

TEST_CASE("Example 1: state, product defect and eigenvalues") {
    CompositeStructure s({2, 2});
    for (double a : {-0.6, -0.3, 0.1, 0.3, 0.6}) {
        for (double b : {-0.3, 0.1, 0.3}) {
            const Example1Params p{a, b};
            const auto rho = example1_state(p);
            const Matrix prod = tensor(reduced_state(rho, s, 0).matrix(), reduced_state(rho, s, 1).matrix());
            CHECK(max_diff(prod - rho.matrix(), a * b / 4 * tensor(sigma_x(), sigma_x())) < 1e-15);
            CHECK(max_diff(spectrum(rho.matrix()), sorted(p.eigenvalues())) < 1e-12);
        }
    }
    CHECK(max_diff(example1_state({0.0, 0.0}).matrix(), identity(4) / 4.0) == 0.0);
    CHECK_THROWS_WITH_AS(example1_state({0.7, 0.6}), doctest::Contains("negative"), ConfigError);
}

TEST_CASE("Example 1: engine matches the closed forms on the grid") {
    const auto model = two_qubit_sigma_z_model();
    const auto params = SeaParams::standard(model);
    const double grid[] = {-0.6, -0.3, 0.1, 0.3, 0.6};
    std::size_t points = 0;
    for (double a : grid) {
        for (double b : grid) {
            const Example1Params p{a, b};
            if (std::abs(a) + std::abs(b) > 1.0) {
                CHECK_THROWS_AS(example1_state(p), ConfigError);
                continue;
            }
            ++points;
            const auto rho = example1_state(p);
            const auto closed = example1_dissipators(p);
            CHECK(max_diff(dissipator(rho, model, 0, params).anticommutator_term, closed.a) < 1e-10);
            CHECK(max_diff(dissipator(rho, model, 1, params).anticommutator_term, closed.b) < 1e-10);
            CHECK(non_x_content(closed.a) == 0.0);
            CHECK(non_x_content(dissipator(rho, model, 0, params).anticommutator_term) < 1e-10);
        }
    }
    CHECK(points == 21);
    const auto zero = example1_dissipators({0.0, 0.0});
    CHECK(max_abs(zero.a) == 0.0);
    CHECK(max_abs(zero.b) == 0.0);
}

TEST_CASE("Example 1: a = b makes the two closed forms coincide") {
    for (double a : {0.1, 0.25, 0.4}) {
        const auto d = example1_dissipators({a, a});
        CHECK(max_diff(d.a, d.b) < 1e-15);
    }
}

TEST_CASE("Example 2: eigenvalues and partial-transpose spectrum") {
    CompositeStructure s({2, 2});
    for (double a : {-0.2, -0.1, 0.0, 0.1, 0.2}) {
        for (double b : {-0.2, -0.05, 0.1, 0.2}) {
            const Example2Params p{a, b};
            const auto rho = example2_state(p);
            CHECK(max_diff(spectrum(rho.matrix()), sorted(p.eigenvalues())) < 1e-12);
            CHECK(max_diff(spectrum(partial_transpose(rho.matrix(), s, 1)), sorted(p.partial_transpose_eigenvalues())) <
                  1e-10);
        }
    }
}

TEST_CASE("Example 2: engine matches the closed forms on a valid grid") {
    const auto model = two_qubit_sigma_z_model();
    const auto params = SeaParams::standard(model);
    std::size_t points = 0;
    for (double a = -0.3; a <= 0.3001; a += 0.1) {
        for (double b = -0.3; b <= 0.3001; b += 0.1) {
            const Example2Params p{a, b};
            const auto ev = p.eigenvalues();
            if (*std::min_element(ev.begin(), ev.end()) <= 0.01) continue;
            ++points;
            const auto rho = example2_state(p);
            const auto closed = example2_dissipators(p);
            CHECK(max_diff(dissipator(rho, model, 0, params).anticommutator_term, closed.a) < 1e-10);
            CHECK(max_diff(dissipator(rho, model, 1, params).anticommutator_term, closed.b) < 1e-10);
            CHECK(non_x_content(dissipator(rho, model, 0, params).anticommutator_term) < 1e-10);
        }
    }
    CHECK(points >= 20);
}

TEST_CASE("Example 2: entanglement along a = -b") {
    CHECK(example2_entanglement({-0.3, 0.3}) == Entanglement::entangled);
    CHECK(example2_entanglement({-0.2, 0.2}) == Entanglement::separable);
    CHECK(ppt_classify(example2_state({-0.3, 0.3})) == Entanglement::entangled);
    CHECK(ppt_classify(example2_state({-0.2, 0.2})) == Entanglement::separable);
    CHECK(ppt_classify(example2_state({-0.5, 0.5})) == Entanglement::entangled);
    CHECK(to_string(Entanglement::entangled) == "entangled");
}

TEST_CASE("Bell-diagonal and Werner states") {
    CHECK(max_diff(werner(0.75).matrix(), identity(4) / 4.0) < 1e-15);
    const auto singlet = bell_diagonal({-1.0, -1.0, -1.0});
    CHECK(max_diff(spectrum(singlet.matrix()), {0.0, 0.0, 0.0, 1.0}) < 1e-15);
    CHECK_THROWS_AS(bell_diagonal({0.9, 0.9, 0.9}), InvalidStateError);
    CHECK_THROWS_AS(werner(1.2), ConfigError);

    CompositeStructure s({2, 2});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto c = random_bell_coefficients(seed);
        const auto rho = bell_diagonal(c);
        const Matrix p = perceive(matrix_bln(rho), rho, s, 0).op;
        CHECK(max_diff(p, p(0, 0) * identity(2)) < 1e-13);
        CHECK(max_diff(spectrum(rho.matrix()), sorted(bell_diagonal_eigenvalues(c))) < 1e-14);
    }
}

TEST_CASE("random Pauli-family states are valid and deterministic") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto p = random_pauli_state(seed);
        CHECK_NOTHROW(assemble_pauli_state(p));
        CHECK(random_pauli_state(seed).a == p.a);
    }
}
