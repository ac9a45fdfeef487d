// test_nosignal.cpp — local unitaries and the randomized certification harness

#include "doctest.h"

#include "support.hpp"

#include "seadyn/composite.hpp"
#include "seadyn/errors.hpp"
#include "seadyn/nosignal.hpp"
#include "seadyn/presets.hpp"

#include <cmath>

using namespace seadyn;
using testing_support::max_diff;
using testing_support::spectrum;

namespace {

CompositeModel tripartite(bool with_bc) {
    CompositeStructure s({2, 2, 2});
    HamiltonianSpec spec{{sigma_z(), 0.8 * sigma_x(), 0.5 * sigma_z()}, Matrix()};
    if (with_bc) {
        const std::vector<std::size_t> bc{1, 2};
        spec.interaction = embed(tensor(sigma_x(), sigma_x()), s, bc);
    }
    return CompositeModel(s, spec);
}

} // namespace

TEST_CASE("apply_local_unitary: identity, Pauli flip, spectrum, errors") {
    CompositeStructure s({2, 2});
    const auto rho = example1_state({0.4, 0.2});
    CHECK(max_diff(apply_local_unitary(rho, identity(2), s, 1).matrix(), rho.matrix()) == 0.0);

    const auto flipped = apply_local_unitary(rho, sigma_z(), s, 1);
    CHECK(max_diff(flipped.matrix(), example1_state({0.4, -0.2}).matrix()) < 1e-15);
    CHECK(max_diff(reduced_state(flipped, s, 0).matrix(), reduced_state(rho, s, 0).matrix()) < 1e-15);

    const auto moved = apply_local_unitary(rho, sigma_x(), s, 1);
    CHECK(max_diff(moved.matrix(), rho.matrix()) < 1e-15);

    const auto r = random_density(4, 3, 5);
    const auto ru = apply_local_unitary(r, random_unitary(2, 6), s, 1);
    CHECK(testing_support::max_diff(spectrum(ru.matrix()), spectrum(r.matrix())) < 1e-10);

    CHECK_THROWS_AS(apply_local_unitary(rho, 2.0 * identity(2), s, 1), PreconditionError);
    CHECK_THROWS_AS(apply_local_unitary(rho, identity(3), s, 1), PreconditionError);
}

TEST_CASE("certify_unitary_invariance: SEA passes, identity is exact, deterministic") {
    const auto model = two_qubit_sigma_z_model();
    const auto params = SeaParams::standard(model);
    CertificationOptions opts;
    opts.trials = 200;
    opts.seed = 42;
    opts.jobs = 4;
    const auto report = certify_unitary_invariance(model, params, opts);
    CHECK(report.passed());
    CHECK(report.trials == 200);
    CHECK(report.seeds.size() == 200);
    CHECK(report.max_marginal_deviation < 1e-9);
    CHECK(report.max_perception_deviation < 1e-9);
    CHECK(report.max_local_rhs_deviation < 1e-9);
    CHECK(report.max_spectrum_deviation < 1e-10);
    CHECK(report.witnesses.empty());

    opts.jobs = 1;
    const auto again = certify_unitary_invariance(model, params, opts);
    CHECK(again.max_local_rhs_deviation == report.max_local_rhs_deviation);
    CHECK(again.seeds == report.seeds);
    CHECK(again.ensemble == report.ensemble);

    opts.identity_operations = true;
    opts.trials = 20;
    const auto trivial = certify_unitary_invariance(model, params, opts);
    CHECK(trivial.max_marginal_deviation == 0.0);
    CHECK(trivial.max_perception_deviation == 0.0);
    CHECK(trivial.max_local_rhs_deviation == 0.0);
}

TEST_CASE("certify_unitary_invariance: ensemble mixes full-rank, rank-deficient and structured") {
    const auto model = two_qubit_sigma_z_model();
    CertificationOptions opts;
    opts.trials = 8;
    const auto report = certify_unitary_invariance(model, SeaParams::standard(model), opts);
    std::size_t full = 0, deficient = 0, structured = 0;
    for (const auto& f : report.ensemble) {
        full += f == "full-rank";
        deficient += f == "rank-deficient";
        structured += f == "pauli-family";
    }
    CHECK(full == 4);
    CHECK(deficient == 2);
    CHECK(structured == 2);
}

TEST_CASE("certify_unitary_invariance: the mutant law is caught with a witness") {
    const auto model = two_qubit_sigma_z_model();
    CertificationOptions opts;
    opts.trials = 50;
    opts.seed = 7;
    const auto report = certify_unitary_invariance(model, SeaParams::standard(model), opts, mutant_law());
    CHECK_FALSE(report.passed());
    CHECK_FALSE(report.local_rhs_pass);
    CHECK(report.marginal_pass);
    CHECK(report.max_local_rhs_deviation > 1e-3);
    REQUIRE_FALSE(report.witnesses.empty());
    CHECK(report.witnesses.size() <= opts.max_witnesses);
    CHECK(report.witnesses[0].deviation > 1e-9);
}

TEST_CASE("certify_unitary_invariance: interacting subsystem is a precondition error") {
    const auto model = testing_support::random_model({2, 2}, 1, true);
    CHECK_THROWS_AS(certify_unitary_invariance(model, SeaParams::standard(model), CertificationOptions{}),
                    PreconditionError);
}

TEST_CASE("certify_unitary_invariance: 2x3 and tripartite layouts") {
    const auto model = testing_support::random_model({2, 3}, 2, false);
    CertificationOptions opts;
    opts.trials = 40;
    CHECK(certify_unitary_invariance(model, SeaParams::standard(model), opts).passed());
    const auto tri = tripartite(true);
    CHECK(certify_unitary_invariance(tri, SeaParams::standard(tri), opts).passed());
}

TEST_CASE("certify_remote_interaction_invariance: bipartite local change and tripartite switch") {
    CompositeStructure s({2, 2});
    const CompositeModel base(s, {{sigma_z(), sigma_z()}, Matrix()});
    const CompositeModel shifted(s, {{sigma_z(), sigma_z() + sigma_x()}, Matrix()});
    CertificationOptions opts;
    opts.trials = 100;
    opts.seed = 3;
    const auto bip = certify_remote_interaction_invariance(base, SeaParams::standard(base), shifted,
                                                           SeaParams::standard(shifted), opts);
    CHECK(bip.passed());
    CHECK(bip.max_dissipator_deviation < 1e-9);

    const auto off = tripartite(false);
    const auto on = tripartite(true);
    const auto tri = certify_remote_interaction_invariance(off, SeaParams::standard(off), on,
                                                           SeaParams::standard(on), opts);
    CHECK(tri.passed());
    CHECK(tri.max_local_rhs_deviation < 1e-9);
    CHECK(tri.max_marginal_deviation < 1e-9);
}

TEST_CASE("certify_remote_interaction_invariance: a modification touching J is rejected") {
    CompositeStructure s({2, 2});
    const CompositeModel base(s, {{sigma_z(), sigma_z()}, Matrix()});
    const CompositeModel coupled(s, {{sigma_z(), sigma_z()}, 0.3 * tensor(sigma_x(), sigma_x())});
    const CompositeModel relabeled(s, {{sigma_x(), sigma_z()}, Matrix()});
    CertificationOptions opts;
    opts.trials = 5;
    CHECK_THROWS_AS(certify_remote_interaction_invariance(base, SeaParams::standard(base), coupled,
                                                          SeaParams::standard(coupled), opts),
                    PreconditionError);
    CHECK_THROWS_AS(certify_remote_interaction_invariance(base, SeaParams::standard(base), relabeled,
                                                          SeaParams::standard(relabeled), opts),
                    PreconditionError);
}

TEST_CASE("trial seeds are deterministic") {
    CHECK(trial_seeds(5, 10) == trial_seeds(5, 10));
    CHECK(trial_seeds(5, 10) != trial_seeds(6, 10));
}
