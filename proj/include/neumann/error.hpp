#pragma once

#include <stdexcept>
#include <string>

namespace neumann {

// Base for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad caller input: violated precondition, argument outside the domain of a
// formula, malformed configuration. The CLI maps these to exit status 1.
class InputError : public Error {
public:
    using Error::Error;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

class ConfigError : public InputError {
public:
    using InputError::InputError;
};

// Numerical breakdown: unbracketed root, overflow, degenerate mesh, failed
// factorization. The CLI maps these to exit status 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

class RangeError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class MeshError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw PreconditionError(what);
}

} // namespace detail
} // namespace neumann
