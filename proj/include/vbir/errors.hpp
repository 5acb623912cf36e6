#pragma once

#include <stdexcept>
#include <string>

namespace vbir {

/// Input outside the domain of a formula (non-positive wavelength, sigma >= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Pump field at or above the Schwinger field; the weak-field expansion no longer holds.
class FieldValidityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Operating phase where the linear-response sensitivity diverges.
class DivergenceError : public DomainError {
public:
    using DomainError::DomainError;
};

/// |alpha|^2 == sinh^2 r: the mean signal slope vanishes identically.
class DegenerateStateError : public DomainError {
public:
    using DomainError::DomainError;
};

/// OPA pumped at or above threshold (p >= 1).
class AboveThresholdError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Unreadable or malformed facility / scenario file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace vbir
