#pragma once

#include <stdexcept>
#include <string>

namespace kontsevich {

/// Base of every error raised by the library. `exit_code()` is the status the
/// command-line front-end reports for this failure class.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
    virtual const char* kind() const noexcept { return "error"; }
};

/// Input could not be parsed (malformed JSON, unknown flag values).
class ParseError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
    const char* kind() const noexcept override { return "parse"; }
};

/// Input parsed but violates a structural invariant (colliding strands,
/// duplicate chord feet, 2-valent graph vertex, ...).
class ValidationError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
    const char* kind() const noexcept override { return "validation"; }
};

/// A configured size cap was exceeded (degree cap, enumeration size).
class ResourceError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
    const char* kind() const noexcept override { return "resource"; }
};

/// Quadrature or geometry failed numerically (near-collision, subdivision limit).
class NumericalError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 5; }
    const char* kind() const noexcept override { return "numerical"; }
};

}  // namespace kontsevich
