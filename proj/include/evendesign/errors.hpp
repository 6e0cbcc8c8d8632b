#pragma once

#include <stdexcept>
#include <string>

namespace evendesign {

/// Arguments outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An enumeration would exceed its configured budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unsupported configuration (field degree, file format version, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed design file, catalog line or checkpoint.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact-arithmetic postcondition failed. Always a bug or a corrupt input.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace evendesign
