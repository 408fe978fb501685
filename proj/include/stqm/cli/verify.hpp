#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "stqm/spectral.hpp"

namespace stqm::cli {

struct CriterionResult {
  int id = 0;
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string note;
};

struct VerifyOptions {
  // Perturbation hook for mutation checks: flipping the multiplier branch
  // must break the dispersion pipeline.
  SqrtBranch half_derivative_branch = SqrtBranch::Principal;
};

// Runs the full verification suite (14 criteria, fixed tolerances).
std::vector<CriterionResult> run_verify(const VerifyOptions& options = {});

// Prints one criterion/measured/bound/status line per result; returns the
// number of failures.
int report_verify(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace stqm::cli
