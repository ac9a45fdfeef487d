// structure.cpp — index arithmetic for CompositeStructure

#include "seadyn/structure.hpp"

#include "seadyn/errors.hpp"

#include <algorithm>
#include <string>

namespace seadyn {

CompositeStructure::CompositeStructure(std::vector<std::size_t> dims, std::size_t dimension_cap)
    : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw ConfigError("structure.dims: at least one subsystem is required");
    }
    for (std::size_t j = 0; j < dims_.size(); ++j) {
        if (dims_[j] == 0) {
            throw ConfigError("structure.dims[" + std::to_string(j) + "]: dimension must be positive");
        }
        total_ *= dims_[j];
        if (total_ > dimension_cap) {
            throw ConfigError("structure.dims: total dimension exceeds cap of " +
                              std::to_string(dimension_cap));
        }
    }
    strides_.assign(dims_.size(), 1);
    for (std::size_t j = dims_.size() - 1; j-- > 0;) {
        strides_[j] = strides_[j + 1] * dims_[j + 1];
    }
}

std::size_t CompositeStructure::dim(std::size_t j) const {
    check_index(j);
    return dims_[j];
}

std::size_t CompositeStructure::dim_of(std::span<const std::size_t> subset) const {
    std::size_t d = 1;
    for (auto j : subset) d *= dim(j);
    return d;
}

std::vector<std::size_t> CompositeStructure::complement(std::size_t j) const {
    check_index(j);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (k != j) out.push_back(k);
    }
    return out;
}

std::vector<std::size_t> CompositeStructure::complement(std::span<const std::size_t> subset) const {
    std::vector<bool> in(dims_.size(), false);
    for (auto j : subset) {
        check_index(j);
        in[j] = true;
    }
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        if (!in[k]) out.push_back(k);
    }
    return out;
}

std::vector<std::size_t> CompositeStructure::digits(std::size_t flat) const {
    std::vector<std::size_t> out(dims_.size());
    for (std::size_t j = 0; j < dims_.size(); ++j) {
        out[j] = (flat / strides_[j]) % dims_[j];
    }
    return out;
}

std::size_t CompositeStructure::compose(std::span<const std::size_t> digits) const {
    std::size_t flat = 0;
    for (std::size_t j = 0; j < dims_.size(); ++j) flat += digits[j] * strides_[j];
    return flat;
}

std::size_t CompositeStructure::project_index(std::size_t flat,
                                              std::span<const std::size_t> subset) const {
    std::size_t out = 0;
    for (auto j : subset) {
        out = out * dims_[j] + (flat / strides_[j]) % dims_[j];
    }
    return out;
}

void CompositeStructure::check_index(std::size_t j) const {
    if (j >= dims_.size()) {
        throw ConfigError("subsystem index " + std::to_string(j) + " out of range (have " +
                          std::to_string(dims_.size()) + " subsystems)");
    }
}

} // namespace seadyn
