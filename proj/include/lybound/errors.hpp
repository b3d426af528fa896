#pragma once

#include <stdexcept>
#include <string>

namespace lyb {

/// Malformed or inadmissible input (non-simple polygon, negative area, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a formula (log of a value <= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An energy scale lambda that does not meet a construction threshold.
class ThresholdError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sampling too coarse for a requested numerical estimate.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative solver or root finder did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lyb
