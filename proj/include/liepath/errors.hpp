#ifndef LIEPATH_ERRORS_HPP
#define LIEPATH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace liepath {

// Raised when a verdict would depend on information that is not exactly
// representable (floating angles near a lattice point, failed rational snaps,
// ambiguous eigenvalue clusters). The CLI maps these to exit code 3.
struct ExactnessError : std::runtime_error {
    explicit ExactnessError(const std::string& what) : std::runtime_error(what) {}
};

struct UndecidableError : ExactnessError {
    explicit UndecidableError(const std::string& what) : ExactnessError(what) {}
};

struct ClusteringError : ExactnessError {
    explicit ClusteringError(const std::string& what) : ExactnessError(what) {}
};

// A requested verification failed (negative result, not a usage error).
struct CheckFailure : std::runtime_error {
    explicit CheckFailure(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace liepath

#endif
