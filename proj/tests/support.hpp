// support.hpp — small helpers shared by the test executables

#pragma once

#include "seadyn/composite.hpp"
#include "seadyn/linalg.hpp"
#include "seadyn/sea.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace testing_support {

using seadyn::cplx;
using seadyn::Matrix;

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_diff(const Matrix& a, const Matrix& b) { return max_abs(a - b); }

inline Matrix diag(std::initializer_list<double> values) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index k = 0;
    for (double x : values) v(k++) = cplx(x, 0.0);
    return v.asDiagonal();
}

inline std::vector<double> sorted(std::array<double, 4> v) {
    std::sort(v.begin(), v.end());
    return {v.begin(), v.end()};
}

inline std::vector<double> spectrum(const Matrix& m) {
    const auto ev = seadyn::herm_eig(m).eigenvalues;
    return {ev.data(), ev.data() + ev.size()};
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

// Σ_J H_J ⊗ I with random local Hamiltonians plus an optional random interaction.
inline seadyn::CompositeModel random_model(std::vector<std::size_t> dims, std::uint64_t seed,
                                           bool interacting) {
    seadyn::CompositeStructure s(dims);
    seadyn::HamiltonianSpec spec;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        spec.locals.push_back(seadyn::random_hermitian(dims[j], seed * 31 + j + 1));
    }
    if (interacting) spec.interaction = 0.5 * seadyn::random_hermitian(s.total_dim(), seed * 31 + 17);
    return seadyn::CompositeModel(s, spec);
}

} // namespace testing_support
