#pragma once

#include <stdexcept>
#include <string>

namespace lfa {

// Error taxonomy mirrored by the CLI exit-code contract:
//   usage / bad arguments      -> 2
//   math domain (poles etc.)   -> 3
//   nonconvergence             -> 4
//   calibration bound breach   -> 5
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct pole_error : domain_error {
    explicit pole_error(const std::string& msg) : domain_error(msg) {}
};

// valid request shape, but the point lies outside a method's mathematical
// range of validity (e.g. an AFE below its t threshold)
struct math_domain_error : domain_error {
    explicit math_domain_error(const std::string& msg) : domain_error(msg) {}
};

// Raised when an evaluation point sits too close to an a-point, or a
// contour runs too close to one; the caller should re-pick the height.
struct near_singularity_error : domain_error {
    explicit near_singularity_error(const std::string& msg) : domain_error(msg) {}
};

struct nonconvergence_error : std::runtime_error {
    explicit nonconvergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct bound_violation_error : std::runtime_error {
    explicit bound_violation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lfa
