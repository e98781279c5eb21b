#pragma once

#include <stdexcept>
#include <string>

namespace kindef {

// Base class for every error thrown by the library.
struct KindefError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed .alg input or malformed expression text.
struct ParseError : KindefError {
    using KindefError::KindefError;
};

// Violated mathematical precondition (division by zero, odd power under a
// square substitution, binding a defined parameter, ...).
struct DomainError : KindefError {
    using KindefError::KindefError;
};

// Input outside the supported exact domain (e.g. spin values without an
// exact matrix realization, deformation pairs not in the catalog).
struct UnsupportedError : KindefError {
    using KindefError::KindefError;
};

// A configured step or degree bound was exceeded.
struct LimitError : KindefError {
    using KindefError::KindefError;
};

} // namespace kindef
