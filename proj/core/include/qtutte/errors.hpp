#pragma once

#include <stdexcept>
#include <string>

namespace qtutte {

/// Raised when a caller violates a precondition: malformed graphs, bad pin
/// specs, dimension mismatches, unreadable input files. Maps to exit code 2.
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a numerically well-posed routine cannot deliver its contract:
/// indefinite systems, residuals out of tolerance, vanishing post-selection
/// probability. Maps to exit code 3.
class numerical_failure : public std::runtime_error {
public:
    explicit numerical_failure(const std::string& what) : std::runtime_error(what) {}
};

/// File-system level trouble (unwritable output path, missing input).
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qtutte
