#ifndef WINDFARM_ERRORS_HPP
#define WINDFARM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace windfarm {

// Bad configuration or inputs that violate a documented precondition.
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at runtime (solver did not converge, singular point, ...).
// The CLI maps this to exit code 2.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace windfarm

#endif
