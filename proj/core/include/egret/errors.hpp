#pragma once

#include <stdexcept>

namespace egret {

// Argument outside a formula's domain (negative rate, probability out of
// range, log of a non-positive value, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A quantity that must be inverted is zero (zero gradient, zero selection
// probability).
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

// A closed form has a pole at the requested parameters (zero decay rate in a
// mean, gain reaching one). Raised instead of returning infinity.
class DivergenceError : public DomainError {
public:
    using DomainError::DomainError;
};

// A selection distribution with no mass anywhere. Deliberately not mapped to
// a uniform fallback.
class DegenerateDistributionError : public DomainError {
public:
    using DomainError::DomainError;
};

// Unsatisfiable or malformed configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem or stream failure.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace egret
