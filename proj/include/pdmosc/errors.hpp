#pragma once

#include <stdexcept>
#include <string>

namespace pdmosc {

/// Base class for numerical failures. Invalid inputs throw std::invalid_argument instead.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative routine exhausted its evaluation budget before meeting its tolerance.
class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A semi-infinite integrand does not decay over the tail of the compactifying map.
class NonDecaying : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A difference stencil would leave the domain of a positive-only function.
class DomainEdge : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A closed form was evaluated where it is singular (b at or below the guard).
class SingularLimit : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace pdmosc
