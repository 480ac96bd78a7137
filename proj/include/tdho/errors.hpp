#pragma once

#include <stdexcept>
#include <string>

namespace tdho {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (time out of span, odd quantum
/// number, non-positive radicand, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid model parameters (profile fields, constants, tolerances).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Adaptive integrator or iterative scheme failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Ermakov-Pinney amplitude collapsed towards zero during integration.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Pinney composition constants violate AB - C^2 = 1/(m0 W)^2.
class ConstantsError : public Error {
public:
    using Error::Error;
};

/// A triple (rho, rhodot, omega) that cannot come from a consistent solution.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// API misuse, e.g. combining fields sampled on different grids.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Non-finite data hit a linear solve.
class NumericError : public Error {
public:
    using Error::Error;
};

} // namespace tdho
