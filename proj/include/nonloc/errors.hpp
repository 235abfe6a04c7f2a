#pragma once

#include <stdexcept>
#include <string>

namespace nonloc {

/// Invalid parameters or an ill-posed request (bad spacing, exponent out of
/// range, drift with s <= 1/2, ...).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An iterative method exhausted its budget without meeting its tolerance.
struct convergence_error : std::runtime_error {
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A quadrature could not reach the requested accuracy; carries the bound
/// that was achieved.
struct accuracy_error : std::runtime_error {
    accuracy_error(const std::string& msg, double achieved)
        : std::runtime_error(msg), achieved_bound(achieved) {}
    double achieved_bound;
};

/// Input data violates a precondition (non-positive function where positivity
/// is required, too few sample points, ...).
struct data_error : std::runtime_error {
    explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File or stream failure.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace nonloc
