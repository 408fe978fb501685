#pragma once

#include <Eigen/Core>

namespace stqm {

// Trapezoid rule on a uniform grid. The project-wide quadrature; adaptive
// schemes appear only in the Gauss-Kronrod validation oracle.
template <typename Derived>
typename Derived::Scalar trapezoid(const Eigen::DenseBase<Derived>& v, double step) {
  using Scalar = typename Derived::Scalar;
  const auto& d = v.derived();
  eigen_assert(d.size() >= 2);
  Scalar s = d.sum();
  s -= Scalar(0.5) * (d(0) + d(d.size() - 1));
  return s * Scalar(step);
}

// Per-sample trapezoid weights: step everywhere, step/2 at the ends.
inline Eigen::ArrayXd trapezoid_weights(Eigen::Index count, double step) {
  Eigen::ArrayXd w = Eigen::ArrayXd::Constant(count, step);
  w(0) *= 0.5;
  w(count - 1) *= 0.5;
  return w;
}

// Separable 2D trapezoid rule over values(i, j) sampled on rows x cols.
inline double trapezoid_2d(const Eigen::MatrixXd& values, double row_step, double col_step) {
  const Eigen::VectorXd wr = trapezoid_weights(values.rows(), row_step).matrix();
  const Eigen::VectorXd wc = trapezoid_weights(values.cols(), col_step).matrix();
  return wr.dot(values * wc);
}

// Running trapezoid integral; result(0) = 0.
inline Eigen::ArrayXd cumulative_trapezoid(const Eigen::ArrayXd& v, double step) {
  Eigen::ArrayXd out(v.size());
  out(0) = 0.0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    out(i) = out(i - 1) + 0.5 * step * (v(i - 1) + v(i));
  return out;
}

}  // namespace stqm
