#include "stqm/spectrum.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "stqm/errors.hpp"
#include "stqm/quadrature.hpp"

namespace stqm {

double MomentumSpectrum::total_weight() const {
  return trapezoid((c_plus.abs2() + c_minus.abs2()).matrix(), grid.step);
}

MomentumSpectrum normalize_spectrum(const MomentumSpectrum& spec) {
  const double w = spec.total_weight();
  if (!(w > 0.0))
    throw std::invalid_argument("normalize_spectrum: spectrum has zero weight");
  const double scale = 1.0 / std::sqrt(w);
  return MomentumSpectrum{spec.grid, spec.c_plus * scale, spec.c_minus * scale};
}

MomentumSpectrum gaussian_spectrum(double p0, double sigma, const Grid1D& grid, Branch branch) {
  if (!(p0 > 0.0)) throw std::invalid_argument("gaussian_spectrum: P0 must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_spectrum: sigma must be positive");
  if (!(grid.start > 0.0))
    throw std::invalid_argument("gaussian_spectrum: momentum grid must be strictly positive");

  // |C|^2 is a Gaussian with standard deviation sigma; mass off the grid is
  // an unrepresentable spectrum, flagged instead of silently aliased.
  const double inv = 1.0 / (sigma * std::numbers::sqrt2);
  const double mass_inside =
      0.5 * (std::erf((grid.stop() - p0) * inv) - std::erf((grid.start - p0) * inv));
  if (1.0 - mass_inside > 0.01) {
    std::ostringstream msg;
    msg << "gaussian_spectrum: " << 100.0 * (1.0 - mass_inside)
        << "% of the spectrum mass lies outside the grid [" << grid.start << ", " << grid.stop()
        << "] (limit 1%)";
    throw GuardError(msg.str());
  }

  const Eigen::ArrayXd p = grid.points();
  const Eigen::ArrayXcd c =
      (-(p - p0).square() / (4.0 * sigma * sigma)).exp().cast<std::complex<double>>();
  const Eigen::ArrayXcd zero = Eigen::ArrayXcd::Zero(grid.count);

  MomentumSpectrum spec;
  spec.grid = grid;
  switch (branch) {
    case Branch::Plus:
      spec.c_plus = c;
      spec.c_minus = zero;
      break;
    case Branch::Minus:
      spec.c_plus = zero;
      spec.c_minus = c;
      break;
    case Branch::Both:
      spec.c_plus = c;
      spec.c_minus = c;
      break;
  }
  return normalize_spectrum(spec);
}

MomentumSpectrum translated(const MomentumSpectrum& spec, double a, const PhysicalConstants& pc) {
  const Eigen::ArrayXd phase = spec.grid.points() * (a / pc.hbar);
  const Eigen::ArrayXcd rot = phase.unaryExpr([](double s) { return std::polar(1.0, s); });
  return MomentumSpectrum{spec.grid, spec.c_plus * rot, spec.c_minus * rot.conjugate()};
}

MomentumSpectrum time_shifted(const MomentumSpectrum& spec, double t0, const PhysicalConstants& pc) {
  const Eigen::ArrayXd p = spec.grid.points();
  const Eigen::ArrayXd phase = p.square() * (t0 / (2.0 * pc.mass * pc.hbar));
  const Eigen::ArrayXcd rot = phase.unaryExpr([](double s) { return std::polar(1.0, s); });
  return MomentumSpectrum{spec.grid, spec.c_plus * rot, spec.c_minus * rot};
}

}  // namespace stqm
