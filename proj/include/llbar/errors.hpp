#pragma once

#include <stdexcept>
#include <string>

namespace llbar {

// Bad caller input: out-of-range scalar, wrong matrix shape, bad index.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A value violates a domain invariant (non-Hermitian, not PSD, not an X-state).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative routine failed to converge.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Vanishing denominator in a closed-form expression.
class SingularityError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace llbar
