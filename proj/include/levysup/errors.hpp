#pragma once

#include <stdexcept>
#include <string>

namespace levysup {

/// Argument outside the mathematical or supported domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series or accelerated sequence did not meet its stopping rule.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical quadrature failed to reach its tolerance.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by the Volterra solver when a 2x refinement moves the solution too far.
class MeshTooCoarse : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace levysup
