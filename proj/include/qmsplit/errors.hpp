#pragma once

#include <stdexcept>
#include <string>

namespace qmsplit {

/// Base class of every failure raised by a computation (as opposed to a bad
/// configuration).  The CLI maps these to a nonzero exit status.
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergence : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class NotAnOrder : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class AlgebraSplit : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class NotElliptic : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class EigenMismatch : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class DegenerateLattice : public ComputationError {
public:
    using ComputationError::ComputationError;
};

class InconsistentData : public ComputationError {
public:
    using ComputationError::ComputationError;
};

}  // namespace qmsplit
