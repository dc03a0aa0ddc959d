#pragma once

#include <stdexcept>
#include <string>

namespace freespectra {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidInput : Error {
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

// Eigensolver or other iterative kernel failed to converge.
struct NumericFailure : Error {
    explicit NumericFailure(const std::string& msg) : Error(msg) {}
};

// Evaluation requested at a singularity of a model function.
struct PoleError : Error {
    explicit PoleError(const std::string& msg) : Error(msg) {}
};

// A parametrization broke down (f(s)=0, s=0, conjugate-symmetric input, ...).
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& msg) : Error(msg) {}
};

struct SingularJacobian : Error {
    explicit SingularJacobian(const std::string& msg) : Error(msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(msg) {}
};

struct BracketError : Error {
    explicit BracketError(const std::string& msg) : Error(msg) {}
};

struct DivergenceError : Error {
    double value;  // the offending criterion value
    DivergenceError(const std::string& msg, double v) : Error(msg), value(v) {}
};

struct ConstraintError : Error {
    explicit ConstraintError(const std::string& msg) : Error(msg) {}
};

// Requested size exceeds a documented cap (series order, algebra support, ...).
struct CapacityError : Error {
    explicit CapacityError(const std::string& msg) : Error(msg) {}
};

using CapError = CapacityError;

}  // namespace freespectra
