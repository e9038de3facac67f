#pragma once

#include <stdexcept>
#include <string>

namespace whpc {

/// Grid too coarse to represent a requested frequency.
struct resolution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A resource budget (tensor-node count, dimension cap) was exceeded.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Iterative solver failed to reach the requested tolerance.
struct convergence_error : std::runtime_error {
    double final_residual;
    convergence_error(const std::string& msg, double res)
        : std::runtime_error(msg), final_residual(res) {}
};

/// Coefficient field lost uniform positivity of its real part.
struct degeneracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gaussian moment integral diverges for the supplied parameters.
struct divergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configuration file failed to parse or validate.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical property asserted by a run was violated.
struct property_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace whpc
