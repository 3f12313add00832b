#pragma once

#include <stdexcept>
#include <string>

namespace frachelm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation at (or numerically on top of) a pole, e.g. Gamma at 0, -1, ...
class PoleError : public Error {
public:
    using Error::Error;
};

/// An integral or series could not meet its error budget.
class QuadratureError : public Error {
public:
    using Error::Error;
};

/// I - M is singular at working precision. Usually k is (close to) a
/// scattering pole of the medium.
class SingularSystemError : public Error {
public:
    using Error::Error;
};

/// An iterative factorization did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace frachelm
