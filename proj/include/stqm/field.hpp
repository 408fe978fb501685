#pragma once

#include <Eigen/Core>

#include <complex>

#include "stqm/grid.hpp"

namespace stqm {

using Complex = std::complex<double>;

// Complex-valued samples on a grid: a wave-function slice or a spectrum.
struct ComplexField {
  Grid1D grid;
  Eigen::ArrayXcd values;
};

// Two-component field (phi+, phi-) on a time grid at fixed position x,
// carrying the two momentum branches of the mirror dynamics.
struct PseudoSpinorField {
  Grid1D grid;
  double x = 0.0;
  Eigen::ArrayXcd plus;
  Eigen::ArrayXcd minus;

  // phi^dagger phi, nonnegative pointwise.
  Eigen::ArrayXd density() const { return plus.abs2() + minus.abs2(); }
};

// Joint amplitude Psi(x & t) on x_grid x t_grid; values(i, j) is the
// amplitude at (x_i, t_j). |Psi|^2 is the joint detection density.
struct JointAmplitude {
  Grid1D x_grid;
  Grid1D t_grid;
  Eigen::MatrixXcd values;
};

// Extends the time axis to the left by pad_count zero samples (same step).
inline JointAmplitude with_left_time_padding(const JointAmplitude& amp, Eigen::Index pad_count) {
  JointAmplitude out;
  out.x_grid = amp.x_grid;
  out.t_grid = Grid1D{amp.t_grid.start - static_cast<double>(pad_count) * amp.t_grid.step,
                      amp.t_grid.step, amp.t_grid.count + pad_count};
  out.values = Eigen::MatrixXcd::Zero(amp.values.rows(), amp.values.cols() + pad_count);
  out.values.rightCols(amp.values.cols()) = amp.values;
  return out;
}

}  // namespace stqm
