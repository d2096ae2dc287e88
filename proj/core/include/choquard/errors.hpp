#ifndef CHOQUARD_ERRORS_HPP
#define CHOQUARD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace choquard {

// Invalid configuration or parameters outside the supported regime.
// The CLI maps this to exit code 2.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad runtime data (NaN fields, mismatched grids, unreadable files).
class data_error : public std::runtime_error {
public:
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A solver or root-find failed to reach its tolerance.
class convergence_error : public std::runtime_error {
public:
  explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// No admissible solution exists for the requested projection/scaling.
class infeasible_error : public std::runtime_error {
public:
  explicit infeasible_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace choquard

#endif
