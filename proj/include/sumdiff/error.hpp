#pragma once

#include <stdexcept>
#include <string>

namespace sumdiff {

// Base of everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller supplied something unusable. The CLI maps these to exit status 1.
struct InputError : Error {
    using Error::Error;
};

struct RangeError : InputError {
    using InputError::InputError;
};

struct ParameterError : InputError {
    using InputError::InputError;
};

struct DomainError : InputError {
    using InputError::InputError;
};

struct ValidationError : InputError {
    using InputError::InputError;
};

struct UsageError : InputError {
    using InputError::InputError;
};

// Work that was well-formed but could not be completed (exit status 2).
struct ResourceError : Error {
    using Error::Error;
};

struct NumericalError : Error {
    using Error::Error;
};

struct OverflowError : Error {
    using Error::Error;
};

// A measured record broke one of the deterministic identities. Always a bug.
struct InvariantError : Error {
    using Error::Error;
};

} // namespace sumdiff
