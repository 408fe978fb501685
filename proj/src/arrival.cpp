#include "stqm/arrival.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "stqm/errors.hpp"
#include "stqm/quadrature.hpp"

namespace stqm {

namespace {

constexpr double kPi = std::numbers::pi;

// Fastest integrand phase over the requested ranges:
// max |dPhi/dP| = max |x - P t / m| / hbar at the box corners (the
// expression is monotone in each variable separately).
double max_phase_derivative(const Grid1D& p_grid, double x_lo, double x_hi, double t_lo,
                            double t_hi, const PhysicalConstants& pc) {
  double worst = 0.0;
  for (double x : {x_lo, x_hi})
    for (double p : {p_grid.start, p_grid.stop()})
      for (double t : {t_lo, t_hi})
        worst = std::max(worst, std::abs(x - p * t / pc.mass));
  return worst / pc.hbar;
}

void require_phase_resolution(const Grid1D& p_grid, double x_lo, double x_hi, double t_lo,
                              double t_hi, const PhysicalConstants& pc, const char* where) {
  const double deriv = max_phase_derivative(p_grid, x_lo, x_hi, t_lo, t_hi, pc);
  const double phase_step = p_grid.step * deriv;
  if (phase_step < kPi / 4.0) return;
  const auto needed =
      static_cast<Eigen::Index>(std::ceil(p_grid.span() * deriv / (kPi / 4.0))) + 1;
  std::ostringstream msg;
  msg << where << ": momentum grid cannot resolve the integrand phase (step * max|dPhi/dP| = "
      << phase_step << " >= pi/4); at least " << needed << " points are required";
  throw GuardError(msg.str());
}

Eigen::ArrayXcd unit_phases(const Eigen::ArrayXd& angles) {
  return angles.unaryExpr([](double a) { return std::polar(1.0, a); });
}

}  // namespace

ComplexField phi_eigenfunction(double p, const Grid1D& t_grid, const PhysicalConstants& pc) {
  if (!(p > 0.0))
    throw std::domain_error("phi_eigenfunction: P must be positive (negative energies excluded)");
  const double amp = std::sqrt(p / (2.0 * kPi * pc.mass * pc.hbar));
  const double energy = p * p / (2.0 * pc.mass);
  ComplexField out;
  out.grid = t_grid;
  out.values = amp * unit_phases(t_grid.points() * (-energy / pc.hbar));
  return out;
}

std::pair<double, double> dispersion(double w, const PhysicalConstants& pc) {
  if (w < 0.0)
    throw std::domain_error("dispersion: negative w leads to imaginary P");
  const double p = std::sqrt(2.0 * pc.mass * pc.hbar * w);
  return {p, -p};
}

PseudoSpinorField mirror_solution(const MomentumSpectrum& spec, double x, const Grid1D& t_grid,
                                  const PhysicalConstants& pc) {
  require_phase_resolution(spec.grid, -std::abs(x), std::abs(x), t_grid.start, t_grid.stop(), pc,
                           "mirror_solution");

  const Eigen::ArrayXd p = spec.grid.points();
  const Eigen::ArrayXd weights =
      trapezoid_weights(spec.grid.count, spec.grid.step) * (p / (2.0 * kPi * pc.mass * pc.hbar)).sqrt();
  const Eigen::ArrayXcd plus_kernel = spec.c_plus * weights * unit_phases(p * (x / pc.hbar));
  const Eigen::ArrayXcd minus_kernel = spec.c_minus * weights * unit_phases(p * (-x / pc.hbar));
  const Eigen::ArrayXd energy_rate = p.square() / (2.0 * pc.mass * pc.hbar);

  PseudoSpinorField out;
  out.grid = t_grid;
  out.x = x;
  out.plus.resize(t_grid.count);
  out.minus.resize(t_grid.count);
  Eigen::ArrayXcd phase(spec.grid.count);
  for (Eigen::Index k = 0; k < t_grid.count; ++k) {
    phase = unit_phases(energy_rate * (-t_grid.point(k)));
    out.plus(k) = (plus_kernel * phase).sum();
    out.minus(k) = (minus_kernel * phase).sum();
  }
  return out;
}

ArrivalDensity arrival_density(const MomentumSpectrum& spec, double x, const Grid1D& t_grid,
                               const PhysicalConstants& pc) {
  const PseudoSpinorField phi = mirror_solution(spec, x, t_grid, pc);
  return ArrivalDensity{t_grid, x, phi.density()};
}

ComplexField schrodinger_packet(const MomentumSpectrum& spec, const Grid1D& x_grid, double t,
                                const PhysicalConstants& pc) {
  if ((spec.c_minus.abs2() > 0.0).any())
    throw std::invalid_argument(
        "schrodinger_packet: defined for one-sided spectra only (C- must vanish)");
  require_phase_resolution(spec.grid, x_grid.start, x_grid.stop(), t, t, pc, "schrodinger_packet");

  const Eigen::ArrayXd p = spec.grid.points();
  const Eigen::ArrayXcd kernel = spec.c_plus *
                                 trapezoid_weights(spec.grid.count, spec.grid.step) /
                                 std::sqrt(2.0 * kPi * pc.hbar) *
                                 unit_phases(p.square() * (-t / (2.0 * pc.mass * pc.hbar)));

  ComplexField out;
  out.grid = x_grid;
  out.values.resize(x_grid.count);
  for (Eigen::Index k = 0; k < x_grid.count; ++k)
    out.values(k) = (kernel * unit_phases(p * (x_grid.point(k) / pc.hbar))).sum();
  return out;
}

Eigen::ArrayXd current_density(const MomentumSpectrum& spec, double x, const Grid1D& t_grid,
                               const PhysicalConstants& pc, double dx) {
  if (!(dx > 0.0)) throw std::invalid_argument("current_density: dx must be positive");
  const Grid1D stencil = make_grid(x - dx, x + dx, 3);
  Eigen::ArrayXd j(t_grid.count);
  for (Eigen::Index k = 0; k < t_grid.count; ++k) {
    const ComplexField psi = schrodinger_packet(spec, stencil, t_grid.point(k), pc);
    const Complex dpsi = (psi.values(2) - psi.values(0)) / (2.0 * dx);
    j(k) = pc.hbar / pc.mass * std::imag(std::conj(psi.values(1)) * dpsi);
  }
  return j;
}

MirrorResidual mirror_residual(const MomentumSpectrum& spec, double x, double dx,
                               const Grid1D& t_grid, const PhysicalConstants& pc,
                               SqrtBranch branch) {
  const PseudoSpinorField phi = mirror_solution(spec, x, t_grid, pc);
  if (!(phi.density().maxCoeff() > 0.0)) return MirrorResidual{0.0, false};

  const Eigen::ArrayXd window = taper_window(t_grid.count);
  const auto [lo, hi] = taper_flat_range(t_grid.count);

  // sigma_z sqrt(2 m i hbar) D^{1/2}, branch chosen so plus-branch
  // eigenfunctions map to +P phi.
  const Complex root = std::sqrt(Complex(0.0, 2.0 * pc.mass * pc.hbar));
  const Eigen::ArrayXcd lhs_plus =
      root * half_derivative(ComplexField{t_grid, phi.plus * window}, branch).values;
  const Eigen::ArrayXcd lhs_minus =
      -root * half_derivative(ComplexField{t_grid, phi.minus * window}, branch).values;

  const PseudoSpinorField fwd = mirror_solution(spec, x + dx, t_grid, pc);
  const PseudoSpinorField bwd = mirror_solution(spec, x - dx, t_grid, pc);
  const Complex fd = Complex(0.0, -pc.hbar / (2.0 * dx));
  const Eigen::ArrayXcd rhs_plus = fd * (fwd.plus - bwd.plus) * window;
  const Eigen::ArrayXcd rhs_minus = fd * (fwd.minus - bwd.minus) * window;

  const Eigen::Index len = hi - lo;
  const double num = std::sqrt((lhs_plus - rhs_plus).segment(lo, len).abs2().sum() +
                               (lhs_minus - rhs_minus).segment(lo, len).abs2().sum());
  const double den = std::sqrt(rhs_plus.segment(lo, len).abs2().sum() +
                               rhs_minus.segment(lo, len).abs2().sum());
  if (!(den > 0.0)) return MirrorResidual{0.0, false};
  return MirrorResidual{num / den, true};
}

}  // namespace stqm
