// Acceptance suite: runs every verification criterion at its pinned
// tolerance and prints one pass/fail line per criterion.

#include <iostream>

#include "stqm/cli/verify.hpp"

int main() {
  const auto results = stqm::cli::run_verify();
  return stqm::cli::report_verify(results, std::cout);
}
