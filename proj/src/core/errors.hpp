#ifndef SLSEM_ERRORS_HPP
#define SLSEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace slsem {

// Base class for all numerical/config failures raised by the core.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

// A pivot fell below tolerance: degenerate nodes or an excessive advection shift.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

class NoConvergenceError : public Error {
public:
    using Error::Error;
};

// Symbol value at theta=0 is not 1: stencil weights do not sum to one.
class InconsistentSymbolError : public Error {
public:
    using Error::Error;
};

class DegenerateDependenceError : public Error {
public:
    using Error::Error;
};

class BracketInvalidError : public Error {
public:
    using Error::Error;
};

class BranchFailureError : public Error {
public:
    using Error::Error;
};

class DivergenceDetectedError : public Error {
public:
    using Error::Error;
};

} // namespace slsem

#endif
