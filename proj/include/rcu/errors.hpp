#pragma once

#include <stdexcept>
#include <string>

namespace rcu {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes of matrices, windows or readouts do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid parameter values (out-of-range indices, non-stationary models, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A state or estimate left the finite range of binary64.
class NumericOverflow : public Error {
public:
    using Error::Error;
};

/// An operation required an echo-state-property certificate that could not be issued.
class EspError : public Error {
public:
    using Error::Error;
};

/// Least-squares system is rank deficient and no regularization was requested.
class SingularSystem : public Error {
public:
    using Error::Error;
};

/// Experiment configuration failed schema validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace rcu
