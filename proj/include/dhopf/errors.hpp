#pragma once

#include <stdexcept>
#include <string>

namespace dhopf {

/// Input outside the domain where an operation is defined (bad order,
/// threshold outside (0, M), weak feedback where strong feedback is required).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative or adaptive procedure failed to deliver the requested accuracy.
/// The message carries the diagnostics (last iterate, residual, step size).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dhopf
