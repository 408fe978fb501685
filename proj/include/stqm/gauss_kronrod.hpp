#pragma once

#include <complex>
#include <functional>

namespace stqm {

struct QuadResult {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;
  int evaluations = 0;
};

// Adaptive 15-point Gauss-Kronrod quadrature with interval bisection.
// Validation oracle for the trapezoid production path; the operations
// themselves never call it.
QuadResult integrate_gk15(const std::function<std::complex<double>(double)>& f, double a, double b,
                          double rel_tol = 1e-10, double abs_tol = 1e-14, int max_depth = 40);

}  // namespace stqm
