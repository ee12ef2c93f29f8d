#pragma once

// Error taxonomy for the lambdip library.  Each class maps to one CLI exit
// code so callers can distinguish bad inputs from numerical failures.

#include <stdexcept>
#include <string>

namespace lambdip {

// A physical or configuration parameter is out of its documented domain.
class InvalidParameterError : public std::invalid_argument {
public:
    explicit InvalidParameterError(const std::string& what)
        : std::invalid_argument(what) {}
};

// An input magnitude is so large that downstream arithmetic would lose all
// significance (guard threshold: 1e18 rad/s on detunings and Rabi rates).
class NumericRangeError : public std::domain_error {
public:
    explicit NumericRangeError(const std::string& what)
        : std::domain_error(what) {}
};

// Adaptive quadrature hit its subdivision cap before reaching the requested
// tolerance.  Carries the achieved error estimate so callers can report it.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved_rel_error)
        : std::runtime_error(what), achieved_rel_error_(achieved_rel_error) {}

    double achieved_rel_error() const { return achieved_rel_error_; }

private:
    double achieved_rel_error_;
};

// A constrained optimization has an empty feasible set.  Carries the best
// constraint value seen so the caller can say how far away feasibility is.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, double best_constraint_value)
        : std::runtime_error(what), best_constraint_value_(best_constraint_value) {}

    double best_constraint_value() const { return best_constraint_value_; }

private:
    double best_constraint_value_;
};

// A config file or --set override could not be parsed.  Message names the
// offending key and line.
class ConfigParseError : public std::runtime_error {
public:
    explicit ConfigParseError(const std::string& what)
        : std::runtime_error(what) {}
};

// Output file could not be created or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace lambdip
