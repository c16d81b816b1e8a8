#pragma once

#include <stdexcept>
#include <string>

namespace oseen {

/// Invalid input to an operation (length mismatch, bad exponent, malformed data).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside the parameter regime its formula is valid for.
class RegimeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Data violates a solvability condition (e.g. a nonzero mean divergence source).
class CompatibilityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation produced non-finite values or could not reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace oseen
