#pragma once

#include <stdexcept>
#include <string>

namespace galcoh {

/// Raised when an input violates a precondition (bad table, non-invertible
/// action, non-cocycle, malformed config, ...). Maps to CLI exit code 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a computation would exceed a documented size bound.
/// Maps to CLI exit code 3.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an operation is asked for a case outside its supported scope.
class UnsupportedError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An internal consistency check failed. Indicates a bug, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace galcoh
