#pragma once

#include <stdexcept>
#include <string>

namespace stqm {

// Numerical guard failure: phase resolution, spectrum truncation, boundary
// decay, singular conditionals. Kept distinct from argument errors so the
// CLI can map guards to their own exit code.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stqm
