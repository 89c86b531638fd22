#pragma once

#include <stdexcept>

namespace feynrules {

// Input outside the mathematical domain of an operation (non-finite values,
// zero raised to a negative power, a singular regrading...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Two independent computations disagreed beyond tolerance.
class InternalInconsistency : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class SingularTransform : public DomainError {
public:
    using DomainError::DomainError;
};

// Sequence combination or validation failure.
class SequenceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class MissingAmplitude : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Malformed input document.
class SchemaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace feynrules
