#pragma once

#include <stdexcept>
#include <string>

namespace dephase {

// Base for all library failures so callers can map them onto exit codes.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad parameters, invalid Bloch vectors, malformed grids or config values.
struct invalid_input : error {
    using error::error;
};

// A numeric routine did not reach the requested accuracy.
struct numeric_error : error {
    explicit numeric_error(const std::string& msg, double achieved = 0.0)
        : error(msg), achieved_error(achieved) {}
    double achieved_error{0.0};
};

// Fock-space truncation too small for the requested parameters.
struct truncation_error : error {
    using error::error;
};

// Both classification tests fired on the same state; indicates a numerical defect.
struct inconsistency_error : error {
    using error::error;
};

}  // namespace dephase
