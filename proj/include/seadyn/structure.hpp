// structure.hpp — tensor-factor layout of a composite Hilbert space
//
// Subsystem 0 is the slowest-varying (leftmost) factor of every flat index.
// All embeddings, partial traces and partial transposes follow this layout.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace seadyn {

inline constexpr std::size_t kDefaultDimensionCap = 256;

class CompositeStructure {
public:
    explicit CompositeStructure(std::vector<std::size_t> dims,
                                std::size_t dimension_cap = kDefaultDimensionCap);

    std::size_t count() const noexcept { return dims_.size(); }
    std::size_t dim(std::size_t j) const;
    std::size_t total_dim() const noexcept { return total_; }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }

    // Product of dimensions over a subset of factors.
    std::size_t dim_of(std::span<const std::size_t> subset) const;

    // All factor indices except j, ascending.
    std::vector<std::size_t> complement(std::size_t j) const;
    std::vector<std::size_t> complement(std::span<const std::size_t> subset) const;

    // Per-factor digits of a flat index, and back.
    std::vector<std::size_t> digits(std::size_t flat) const;
    std::size_t compose(std::span<const std::size_t> digits) const;

    // Flat index into the space of `subset` (in the given factor order) from a full flat index.
    std::size_t project_index(std::size_t flat, std::span<const std::size_t> subset) const;

    void check_index(std::size_t j) const;

    bool operator==(const CompositeStructure& other) const noexcept { return dims_ == other.dims_; }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    std::size_t total_{1};
};

} // namespace seadyn
