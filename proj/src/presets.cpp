// presets.cpp — closed-form example states and dissipators

#include "seadyn/presets.hpp"

#include "seadyn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace seadyn {

namespace {

void require_nonnegative(const std::array<double, 4>& lambda, const char* what) {
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        if (!std::isfinite(lambda[k]) || lambda[k] < 0.0) {
            std::ostringstream os;
            os << what << ": eigenvalue λ" << k + 1 << " = " << lambda[k] << " is negative";
            throw ConfigError(os.str());
        }
    }
}

std::array<double, 4> blns(const std::array<double, 4>& lambda, double eps_bln) {
    return {bln(lambda[0], eps_bln), bln(lambda[1], eps_bln), bln(lambda[2], eps_bln),
            bln(lambda[3], eps_bln)};
}

} // namespace

CompositeModel two_qubit_sigma_z_model() {
    return CompositeModel(CompositeStructure({2, 2}), HamiltonianSpec{{sigma_z(), sigma_z()}, Matrix()});
}

void Example1Params::validate() const { require_nonnegative(eigenvalues(), "example1"); }

std::array<double, 4> Example1Params::eigenvalues() const {
    return {(1.0 - a - b) / 4.0, (1.0 - a + b) / 4.0, (1.0 + a - b) / 4.0, (1.0 + a + b) / 4.0};
}

DensityMatrix example1_state(const Example1Params& p) {
    p.validate();
    PauliState2Q s;
    s.a = {p.a, 0.0, 0.0};
    s.b = {p.b, 0.0, 0.0};
    return assemble_pauli_state(s);
}

AnticommutatorPair example1_dissipators(const Example1Params& p, double tau, double eps_bln) {
    p.validate();
    const auto l = blns(p.eigenvalues(), eps_bln);
    const double f = l[0] - l[1] - l[2] + l[3];
    const double g = l[0] + l[1] - l[2] - l[3];
    const double h = l[0] - l[1] + l[2] - l[3];
    const double a = p.a, b = p.b;
    return {(1.0 - a * a) / 16.0 * (b * f - g) / tau * sigma_x(),
            (1.0 - b * b) / 16.0 * (a * f - h) / tau * sigma_x()};
}

void Example2Params::validate() const { require_nonnegative(eigenvalues(), "example2"); }

std::array<double, 4> Example2Params::eigenvalues() const {
    return {(1.0 + a - b) / 4.0, (3.0 - a - 5.0 * b) / 12.0, (3.0 + 5.0 * a + b) / 12.0,
            (3.0 - 7.0 * a + 7.0 * b) / 12.0};
}

std::array<double, 4> Example2Params::partial_transpose_eigenvalues() const {
    const double d = 25.0 * a * a - 14.0 * a * b + 25.0 * b * b;
    const double root = std::sqrt(std::max(0.0, d));
    return {(3.0 + a - b) / 12.0, (3.0 - 5.0 * a + 5.0 * b) / 12.0,
            (3.0 + 2.0 * a - 2.0 * b + root) / 12.0, (3.0 + 2.0 * a - 2.0 * b - root) / 12.0};
}

DensityMatrix example2_state(const Example2Params& p) {
    p.validate();
    const double s = 1.0 / std::sqrt(2.0);
    const double c = 2.0 * (p.a - p.b) / 3.0;
    PauliState2Q st;
    st.a = {p.a * s, 0.0, p.a * s};
    st.b = {p.b * s, 0.0, p.b * s};
    st.c = {c, c, c};
    return assemble_pauli_state(st);
}

AnticommutatorPair example2_dissipators(const Example2Params& p, double tau, double eps_bln) {
    p.validate();
    const auto l = blns(p.eigenvalues(), eps_bln);
    const double f = 3.0 * l[0] - 5.0 * l[1] + 5.0 * l[2] - 3.0 * l[3];
    const double g = 3.0 * l[0] + 5.0 * l[1] - 5.0 * l[2] - 3.0 * l[3];
    const double h = l[0] - l[1] - l[2] + l[3];
    const double a = p.a, b = p.b;
    const double r2 = std::sqrt(2.0);
    return {r2 * (1.0 - a * a) / (80.0 * (2.0 - a * a)) * (f - 5.0 * b * h) / tau * sigma_x(),
            -r2 * (1.0 - b * b) / (80.0 * (2.0 - b * b)) * (g + 5.0 * a * h) / tau * sigma_x()};
}

std::string to_string(Entanglement e) {
    return e == Entanglement::entangled ? "entangled" : "separable";
}

Entanglement example2_entanglement(const Example2Params& p) {
    p.validate();
    const auto pt = p.partial_transpose_eigenvalues();
    return *std::min_element(pt.begin(), pt.end()) < 0.0 ? Entanglement::entangled
                                                         : Entanglement::separable;
}

Entanglement ppt_classify(const DensityMatrix& rho, double tol) {
    const CompositeStructure s({2, 2});
    if (rho.dim() != 4) throw ConfigError("ppt_classify: expects a two-qubit state");
    const double lmin = herm_eig(partial_transpose(rho.matrix(), s, 1)).eigenvalues.minCoeff();
    return lmin < -tol ? Entanglement::entangled : Entanglement::separable;
}

std::array<double, 4> bell_diagonal_eigenvalues(const std::array<double, 3>& c) {
    const double x = c[0], y = c[1], z = c[2];
    return {(1.0 - x - y - z) / 4.0, (1.0 - x + y + z) / 4.0, (1.0 + x - y + z) / 4.0,
            (1.0 + x + y - z) / 4.0};
}

DensityMatrix bell_diagonal(const std::array<double, 3>& c) {
    PauliState2Q p;
    p.c = c;
    return assemble_pauli_state(p);
}

DensityMatrix werner(double w) {
    if (!(w >= 0.0 && w <= 1.0)) {
        std::ostringstream os;
        os << "werner.w: " << w << " is outside [0, 1]";
        throw ConfigError(os.str());
    }
    const double c = 4.0 * w / 3.0 - 1.0;
    return bell_diagonal({c, c, c});
}

PauliState2Q random_pauli_state(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    PauliState2Q p;
    for (int k = 0; k < 3; ++k) {
        p.a[k] = unit(rng);
        p.b[k] = unit(rng);
        p.c[k] = unit(rng);
    }
    // Shrink towards I/4 until the state is positive.
    double scale = std::uniform_real_distribution<double>(0.2, 1.0)(rng);
    for (;;) {
        PauliState2Q q = p;
        for (int k = 0; k < 3; ++k) {
            q.a[k] *= scale;
            q.b[k] *= scale;
            q.c[k] *= scale;
        }
        try {
            assemble_pauli_state(q, 0.0);
            return q;
        } catch (const InvalidStateError&) {
        }
        scale *= 0.8;
    }
}

std::array<double, 3> random_bell_coefficients(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::exponential_distribution<double> expo(1.0);
    std::array<double, 4> l{};
    double sum = 0.0;
    for (auto& x : l) sum += (x = expo(rng));
    for (auto& x : l) x /= sum;
    return {-l[0] - l[1] + l[2] + l[3], -l[0] + l[1] - l[2] + l[3], -l[0] + l[1] + l[2] - l[3]};
}

} // namespace seadyn
