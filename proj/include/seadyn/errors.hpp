// errors.hpp — exception hierarchy shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace seadyn {

// Bad input shape, index or configuration field. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A theorem precondition does not hold (e.g. the subsystem under test interacts).
class PreconditionError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Matrix fails density-operator validation.
class InvalidStateError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Integration blow-up, step underflow, eigensolver failure. Exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// (H,H)^J_ρ vanishes so the determinant form of the dissipator is undefined.
class DegenerateHamiltonianError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace seadyn
