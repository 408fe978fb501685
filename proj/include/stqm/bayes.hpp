#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "stqm/grid.hpp"

namespace stqm {

// P(x, t): nonnegative joint detection density on x_grid x t_grid;
// values(i, j) at (x_i, t_j). Unit total integral within quadrature
// tolerance once built by joint_density.
struct JointDensity {
  Grid1D x_grid;
  Grid1D t_grid;
  Eigen::MatrixXd values;

  double total() const;
};

// P(x, t) = f(t) |psi(x|t)|^2. Requires f >= 0 with unit integral and each
// t-slice of psi_sq normalized over x; the error names the failing input.
JointDensity joint_density(const Eigen::ArrayXd& f, const Eigen::MatrixXd& psi_sq,
                           const Grid1D& x_grid, const Grid1D& t_grid);

struct Marginals {
  Eigen::ArrayXd f;  // over t
  Eigen::ArrayXd g;  // over x
};

Marginals marginals(const JointDensity& joint);

// Conditional densities P/f and P/g with slices renormalized to unit
// integral. Slices whose marginal falls below 1e-12 of its peak are
// flagged undefined (zero-filled), never fabricated.
struct Conditionals {
  Eigen::MatrixXd psi_sq;                      // |psi(x|t)|^2, column per t
  Eigen::MatrixXd phi_sq;                      // |phi(t|x)|^2, row per x
  Eigen::Array<bool, Eigen::Dynamic, 1> t_defined;
  Eigen::Array<bool, Eigen::Dynamic, 1> x_defined;
};

Conditionals conditionals(const JointDensity& joint);

// f(t) = [ int |psi(x|t)|^2 / |phi(t|x)|^2 dx ]^{-1} at a grid time t.
// Zero-numerator points are skipped; a vanishing denominator under a
// nonzero numerator is a singular configuration.
double reconstruct_f(const Eigen::MatrixXd& psi_sq, const Eigen::MatrixXd& phi_sq,
                     const Grid1D& x_grid, const Grid1D& t_grid, double t);

struct DetectionEvent {
  double x = 0.0;
  double t = 0.0;
};

// Reproducible record of a detector-array run: identical seed and model
// give an identical event list.
struct EventLog {
  std::vector<DetectionEvent> events;
  std::uint64_t seed = 0;
  std::string model;
};

// n independent draws from P(x, t): inverse-transform sampling on the
// discrete t-marginal, then the conditional column in x, with uniform
// jitter inside each grid cell. Counter-based RNG; deterministic given
// the seed and independent of any thread partitioning of the draw index.
EventLog sample_events(const JointDensity& joint, Eigen::Index n, std::uint64_t seed);

struct EmpiricalMarginals {
  Eigen::ArrayXd t_histogram;  // normalized density over t_grid cells
  Eigen::ArrayXd x_histogram;
  double ks_t = 0.0;           // sup-norm CDF distance vs the reference
  double ks_x = 0.0;
  Eigen::Index outside_count = 0;  // events off the grids: counted, not dropped
};

EmpiricalMarginals empirical_marginals(const EventLog& log, const Grid1D& t_grid,
                                       const Grid1D& x_grid, const Eigen::ArrayXd& f_ref,
                                       const Eigen::ArrayXd& g_ref);

}  // namespace stqm
