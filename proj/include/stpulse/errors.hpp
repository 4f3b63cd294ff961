#pragma once

#include <stdexcept>
#include <string>

namespace stpulse {

// Invalid or out-of-domain input (config file, CLI flag, precondition).
// CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A design request that cannot be satisfied by the ansatz family.
// CLI maps this to exit code 3.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical result violated a hard tolerance (norm drift, fidelity gate,
// inconsistent solve). CLI maps this to exit code 4.
class ToleranceError : public std::runtime_error {
 public:
  explicit ToleranceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stpulse
