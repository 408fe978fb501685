#include "stqm/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stqm/errors.hpp"
#include "stqm/quadrature.hpp"

namespace stqm {

namespace {

// splitmix64 finalizer; with per-(draw, slot) counters this forms a
// counter-based stream, so draws can be partitioned freely.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct CounterRng {
  std::uint64_t seed;

  double uniform(std::uint64_t draw, std::uint64_t slot) const {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (draw + 1) + 0xd1b54a32d192ed03ULL * (slot + 1);
    z = mix64(mix64(z));
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }
};

// Cell boundaries of the trapezoid measure: interior nodes own a full
// step-wide cell, the end nodes half cells.
double jitter_within_cell(const Grid1D& grid, Eigen::Index i, double u) {
  const double node = grid.point(i);
  if (i == 0) return node + 0.5 * grid.step * u;
  if (i == grid.count - 1) return node - 0.5 * grid.step * u;
  return node + grid.step * (u - 0.5);
}

Eigen::Index locate(const double* cdf, Eigen::Index size, double target) {
  const double* it = std::upper_bound(cdf, cdf + size, target);
  return std::min<Eigen::Index>(it - cdf, size - 1);
}

// Piecewise-linear CDF of a sampled density, normalized to end at 1.
Eigen::ArrayXd reference_cdf(const Eigen::ArrayXd& density, double step) {
  Eigen::ArrayXd cdf = cumulative_trapezoid(density, step);
  const double total = cdf(cdf.size() - 1);
  if (!(total > 0.0)) throw std::invalid_argument("reference density has zero mass");
  return cdf / total;
}

double ks_statistic(std::vector<double> samples, const Grid1D& grid, const Eigen::ArrayXd& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double s = samples[k];
    double ref;
    if (s <= grid.start) {
      ref = 0.0;
    } else if (s >= grid.stop()) {
      ref = 1.0;
    } else {
      const double pos = (s - grid.start) / grid.step;
      const auto i = static_cast<Eigen::Index>(pos);
      const double frac = pos - static_cast<double>(i);
      ref = cdf(i) + frac * (cdf(i + 1) - cdf(i));
    }
    worst = std::max(worst, std::abs(static_cast<double>(k + 1) / n - ref));
    worst = std::max(worst, std::abs(ref - static_cast<double>(k) / n));
  }
  return worst;
}

}  // namespace

double JointDensity::total() const { return trapezoid_2d(values, x_grid.step, t_grid.step); }

JointDensity joint_density(const Eigen::ArrayXd& f, const Eigen::MatrixXd& psi_sq,
                           const Grid1D& x_grid, const Grid1D& t_grid) {
  if (f.size() != t_grid.count || psi_sq.rows() != x_grid.count || psi_sq.cols() != t_grid.count)
    throw std::invalid_argument("joint_density: input/grid shape mismatch");
  if ((f < 0.0).any()) throw GuardError("joint_density: f has negative entries");
  if (psi_sq.minCoeff() < 0.0) throw GuardError("joint_density: psi_sq has negative entries");

  const double f_total = trapezoid(f.matrix(), t_grid.step);
  if (std::abs(f_total - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "joint_density: temporal weighting f is not normalized (int f dt = " << f_total << ")";
    throw GuardError(msg.str());
  }
  for (Eigen::Index j = 0; j < t_grid.count; ++j) {
    const double slice = trapezoid(psi_sq.col(j), x_grid.step);
    if (std::abs(slice - 1.0) > 1e-6) {
      std::ostringstream msg;
      msg << "joint_density: psi_sq slice at t = " << t_grid.point(j)
          << " is not normalized (int = " << slice << ")";
      throw GuardError(msg.str());
    }
  }

  JointDensity joint;
  joint.x_grid = x_grid;
  joint.t_grid = t_grid;
  joint.values = (psi_sq.array().rowwise() * f.transpose()).matrix();
  return joint;
}

Marginals marginals(const JointDensity& joint) {
  const Eigen::VectorXd wx = trapezoid_weights(joint.x_grid.count, joint.x_grid.step).matrix();
  const Eigen::VectorXd wt = trapezoid_weights(joint.t_grid.count, joint.t_grid.step).matrix();
  Marginals m;
  m.f = (joint.values.transpose() * wx).array();
  m.g = (joint.values * wt).array();
  return m;
}

Conditionals conditionals(const JointDensity& joint) {
  const Marginals m = marginals(joint);
  const double f_floor = 1e-12 * m.f.maxCoeff();
  const double g_floor = 1e-12 * m.g.maxCoeff();

  Conditionals c;
  c.psi_sq = Eigen::MatrixXd::Zero(joint.values.rows(), joint.values.cols());
  c.phi_sq = Eigen::MatrixXd::Zero(joint.values.rows(), joint.values.cols());
  c.t_defined.resize(joint.t_grid.count);
  c.x_defined.resize(joint.x_grid.count);

  for (Eigen::Index j = 0; j < joint.t_grid.count; ++j) {
    c.t_defined(j) = m.f(j) > f_floor;
    if (!c.t_defined(j)) continue;
    Eigen::VectorXd col = joint.values.col(j) / m.f(j);
    col /= trapezoid(col, joint.x_grid.step);  // pin each slice to unit mass
    c.psi_sq.col(j) = col;
  }
  for (Eigen::Index i = 0; i < joint.x_grid.count; ++i) {
    c.x_defined(i) = m.g(i) > g_floor;
    if (!c.x_defined(i)) continue;
    Eigen::RowVectorXd row = joint.values.row(i) / m.g(i);
    row /= trapezoid(row, joint.t_grid.step);
    c.phi_sq.row(i) = row;
  }
  return c;
}

double reconstruct_f(const Eigen::MatrixXd& psi_sq, const Eigen::MatrixXd& phi_sq,
                     const Grid1D& x_grid, const Grid1D& t_grid, double t) {
  if (psi_sq.rows() != x_grid.count || psi_sq.cols() != t_grid.count ||
      phi_sq.rows() != x_grid.count || phi_sq.cols() != t_grid.count)
    throw std::invalid_argument("reconstruct_f: input/grid shape mismatch");
  const Eigen::Index j = t_grid.index_of(t);

  Eigen::ArrayXd ratio(x_grid.count);
  for (Eigen::Index i = 0; i < x_grid.count; ++i) {
    const double num = psi_sq(i, j);
    const double den = phi_sq(i, j);
    if (num == 0.0) {
      ratio(i) = 0.0;
    } else if (den < 1e-300) {
      std::ostringstream msg;
      msg << "reconstruct_f: singular configuration at (x = " << x_grid.point(i) << ", t = " << t
          << "): |phi(t|x)|^2 vanishes under a nonzero |psi(x|t)|^2";
      throw GuardError(msg.str());
    } else {
      ratio(i) = num / den;
    }
  }
  const double integral = trapezoid(ratio.matrix(), x_grid.step);
  if (!(integral > 0.0))
    throw GuardError("reconstruct_f: f(t) undefined, the ratio integral vanishes");
  return 1.0 / integral;
}

EventLog sample_events(const JointDensity& joint, Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_events: n must be at least 1");

  const Eigen::ArrayXd wx = trapezoid_weights(joint.x_grid.count, joint.x_grid.step);
  const Eigen::ArrayXd wt = trapezoid_weights(joint.t_grid.count, joint.t_grid.step);

  // Discrete cell masses: column pmf over t, then per-column pmf over x.
  Eigen::ArrayXd col_mass(joint.t_grid.count);
  Eigen::MatrixXd col_cdf(joint.values.rows(), joint.values.cols());
  for (Eigen::Index j = 0; j < joint.t_grid.count; ++j) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < joint.values.rows(); ++i) {
      acc += joint.values(i, j) * wx(i);
      col_cdf(i, j) = acc;
    }
    col_mass(j) = acc * wt(j);
  }
  Eigen::ArrayXd t_cdf(joint.t_grid.count);
  double acc = 0.0;
  for (Eigen::Index j = 0; j < joint.t_grid.count; ++j) {
    acc += col_mass(j);
    t_cdf(j) = acc;
  }
  if (!(acc > 0.0)) throw std::invalid_argument("sample_events: joint density has zero mass");

  const CounterRng rng{seed};
  EventLog log;
  log.seed = seed;
  log.model = "inverse-transform(t, x|t) with cell jitter";
  log.events.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto draw = static_cast<std::uint64_t>(k);
    const Eigen::Index j = locate(t_cdf.data(), t_cdf.size(), rng.uniform(draw, 0) * acc);
    const double col_total = col_cdf(joint.values.rows() - 1, j);
    const Eigen::Index i =
        locate(col_cdf.col(j).data(), col_cdf.rows(), rng.uniform(draw, 1) * col_total);
    DetectionEvent ev;
    ev.t = jitter_within_cell(joint.t_grid, j, rng.uniform(draw, 2));
    ev.x = jitter_within_cell(joint.x_grid, i, rng.uniform(draw, 3));
    log.events.push_back(ev);
  }
  return log;
}

EmpiricalMarginals empirical_marginals(const EventLog& log, const Grid1D& t_grid,
                                       const Grid1D& x_grid, const Eigen::ArrayXd& f_ref,
                                       const Eigen::ArrayXd& g_ref) {
  if (log.events.empty()) throw std::invalid_argument("empirical_marginals: empty event log");
  if (f_ref.size() != t_grid.count || g_ref.size() != x_grid.count)
    throw std::invalid_argument("empirical_marginals: reference/grid size mismatch");

  EmpiricalMarginals out;
  out.t_histogram = Eigen::ArrayXd::Zero(t_grid.count);
  out.x_histogram = Eigen::ArrayXd::Zero(x_grid.count);

  std::vector<double> ts, xs;
  ts.reserve(log.events.size());
  xs.reserve(log.events.size());
  const auto bin = [](const Grid1D& g, double v) -> Eigen::Index {
    const double pos = (v - g.start) / g.step;
    const auto i = static_cast<Eigen::Index>(std::llround(pos));
    return (pos < -0.5 || i >= g.count) ? -1 : std::max<Eigen::Index>(i, 0);
  };
  for (const DetectionEvent& ev : log.events) {
    const Eigen::Index j = bin(t_grid, ev.t);
    const Eigen::Index i = bin(x_grid, ev.x);
    if (j < 0 || i < 0) {
      ++out.outside_count;
      continue;
    }
    out.t_histogram(j) += 1.0;
    out.x_histogram(i) += 1.0;
    ts.push_back(ev.t);
    xs.push_back(ev.x);
  }
  if (ts.empty()) throw std::invalid_argument("empirical_marginals: all events off the grids");

  // Counts -> densities over the trapezoid cells.
  const double n_in = static_cast<double>(ts.size());
  out.t_histogram /= n_in;
  out.x_histogram /= n_in;
  out.t_histogram /= trapezoid_weights(t_grid.count, t_grid.step);
  out.x_histogram /= trapezoid_weights(x_grid.count, x_grid.step);

  out.ks_t = ks_statistic(std::move(ts), t_grid, reference_cdf(f_ref, t_grid.step));
  out.ks_x = ks_statistic(std::move(xs), x_grid, reference_cdf(g_ref, x_grid.step));
  return out;
}

}  // namespace stqm
