#include "stqm/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "stqm/errors.hpp"
#include "stqm/quadrature.hpp"

namespace stqm {

namespace {

constexpr double kPi = std::numbers::pi;

// Signed DFT frequency index: j -> j or j - n on the negative half.
double freq_index(Eigen::Index j, Eigen::Index n) {
  return (j <= (n - 1) / 2) ? static_cast<double>(j) : static_cast<double>(j - n);
}

}  // namespace

ComplexField half_derivative(const ComplexField& field, SqrtBranch branch) {
  const Eigen::Index n = field.grid.count;
  if (field.values.size() != n)
    throw std::invalid_argument("half_derivative: values/grid size mismatch");

  Eigen::FFT<double> fft;
  Eigen::VectorXcd in = field.values.matrix();
  Eigen::VectorXcd modes(n);
  fft.fwd(modes, in);

  // The DFT synthesizes bins e^{+i omega_j t}; in the e^{-iwt} mode
  // convention of the operator this is w_j = -omega_j, so the multiplier
  // sqrt(-i w_j) = sqrt(i omega_j).
  const double domega = 2.0 * kPi / (static_cast<double>(n) * field.grid.step);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double omega = domega * freq_index(j, n);
    Complex m = std::sqrt(Complex(0.0, omega));
    if (branch == SqrtBranch::Conjugate) m = std::conj(m);
    modes(j) *= m;
  }

  Eigen::VectorXcd out(n);
  fft.inv(out, modes);
  return ComplexField{field.grid, out.array()};
}

Eigen::ArrayXd taper_window(Eigen::Index count, double fraction, double beta) {
  if (!(fraction >= 0.0 && fraction < 0.5))
    throw std::invalid_argument("taper_window: fraction must be in [0, 0.5)");
  Eigen::ArrayXd w = Eigen::ArrayXd::Ones(count);
  const auto n = static_cast<Eigen::Index>(fraction * static_cast<double>(count));
  if (n < 2) return w;

  // Ramp = normalized running sum of a Kaiser window; the Kaiser kernel's
  // sidelobe level bounds the ramp's leakage away from the carrier.
  const double i0beta = std::cyl_bessel_i(0.0, beta);
  Eigen::ArrayXd ramp(n);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double u = 2.0 * static_cast<double>(k) / static_cast<double>(n - 1) - 1.0;
    acc += std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - u * u)) / i0beta;
    ramp(k) = acc;
  }
  ramp /= acc;

  w.head(n) = ramp;
  w.tail(n) = ramp.reverse();
  return w;
}

std::pair<Eigen::Index, Eigen::Index> taper_flat_range(Eigen::Index count, double fraction) {
  const auto n = static_cast<Eigen::Index>(fraction * static_cast<double>(count));
  return {n, count - n};
}

JointSpectrum joint_fourier(const JointAmplitude& amp, const PhysicalConstants& pc) {
  const Eigen::Index nx = amp.x_grid.count;
  const Eigen::Index nt = amp.t_grid.count;
  if (amp.values.rows() != nx || amp.values.cols() != nt)
    throw std::invalid_argument("joint_fourier: values/grid shape mismatch");

  const double maxabs = amp.values.cwiseAbs().maxCoeff();
  if (!(maxabs > 0.0)) throw std::invalid_argument("joint_fourier: zero amplitude");
  const struct {
    const char* name;
    double value;
  } edges[] = {
      {"x-min", amp.values.row(0).cwiseAbs().maxCoeff()},
      {"x-max", amp.values.row(nx - 1).cwiseAbs().maxCoeff()},
      {"t-min", amp.values.col(0).cwiseAbs().maxCoeff()},
      {"t-max", amp.values.col(nt - 1).cwiseAbs().maxCoeff()},
  };
  for (const auto& e : edges) {
    if (e.value > 1e-6 * maxabs) {
      std::ostringstream msg;
      msg << "joint_fourier: amplitude does not decay at the " << e.name
          << " edge (|Psi| = " << e.value << " vs 1e-6 * max = " << 1e-6 * maxabs << ")";
      throw GuardError(msg.str());
    }
  }

  const double dx = amp.x_grid.step;
  const double dt = amp.t_grid.step;

  Eigen::MatrixXcd work(nx, nt);
  Eigen::FFT<double> fft;

  // Forward DFT along x: kernel e^{-i p x / hbar}.
  {
    Eigen::VectorXcd in(nx), out(nx);
    for (Eigen::Index j = 0; j < nt; ++j) {
      in = amp.values.col(j);
      fft.fwd(out, in);
      work.col(j) = out;
    }
  }
  // Unscaled inverse DFT along t: kernel e^{+i eps t / hbar}.
  {
    Eigen::VectorXcd in(nt), out(nt);
    for (Eigen::Index i = 0; i < nx; ++i) {
      in = work.row(i).transpose();
      fft.inv(out, in);
      work.row(i) = out.transpose() * static_cast<double>(nt);
    }
  }

  const double dp = 2.0 * kPi * pc.hbar / (static_cast<double>(nx) * dx);
  const double deps = 2.0 * kPi * pc.hbar / (static_cast<double>(nt) * dt);

  JointSpectrum spec;
  spec.p_grid = Grid1D{-std::floor(static_cast<double>(nx) / 2.0) * dp, dp, nx};
  spec.eps_grid = Grid1D{-std::floor(static_cast<double>(nt) / 2.0) * deps, deps, nt};
  spec.values.resize(nx, nt);

  // Reorder bins to ascending frequency and attach the grid-origin phases
  // and the 1/(2 pi hbar) Riemann-sum prefactor.
  const double scale = dx * dt / (2.0 * kPi * pc.hbar);
  const Eigen::Index x_split = (nx + 1) / 2;  // first negative bin
  const Eigen::Index t_split = (nt + 1) / 2;
  for (Eigen::Index i = 0; i < nx; ++i) {
    const Eigen::Index src_i = (i + x_split) % nx;
    const double p = spec.p_grid.point(i);
    const Complex px = std::polar(scale, -p * amp.x_grid.start / pc.hbar);
    for (Eigen::Index j = 0; j < nt; ++j) {
      const Eigen::Index src_j = (j + t_split) % nt;
      const double eps = spec.eps_grid.point(j);
      spec.values(i, j) =
          work(src_i, src_j) * px * std::polar(1.0, eps * amp.t_grid.start / pc.hbar);
    }
  }
  return spec;
}

namespace {

double weighted_moment(const JointSpectrum& spec, bool weight_eps) {
  const Eigen::MatrixXd density = spec.values.array().abs2().matrix();
  const Eigen::VectorXd wp = trapezoid_weights(spec.p_grid.count, spec.p_grid.step).matrix();
  const Eigen::VectorXd we = trapezoid_weights(spec.eps_grid.count, spec.eps_grid.step).matrix();
  if (weight_eps) {
    const Eigen::VectorXd we_eps = we.cwiseProduct(spec.eps_grid.points().matrix());
    return wp.dot(density * we_eps);
  }
  const Eigen::VectorXd wp_p = wp.cwiseProduct(spec.p_grid.points().matrix());
  return wp_p.dot(density * we);
}

}  // namespace

double mean_energy(const JointSpectrum& spec) { return weighted_moment(spec, true); }

double mean_momentum(const JointSpectrum& spec) { return weighted_moment(spec, false); }

}  // namespace stqm
