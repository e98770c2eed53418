#ifndef EULERFV_ERRORS_HPP
#define EULERFV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace efv {

// Invalid configuration or parameters rejected before any run starts.
// Maps to exit code 3 at the command layer.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Failure during time stepping (nonlinear solve exhausted its retries,
// positivity lost, ...). Maps to exit code 2 at the command layer.
class SolveError : public std::runtime_error {
public:
  explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace efv

#endif
