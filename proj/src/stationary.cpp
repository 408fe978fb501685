#include "stqm/stationary.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "stqm/errors.hpp"
#include "stqm/quadrature.hpp"

namespace stqm {

Eigen::ArrayXd LorentzianProfile::sample(const Grid1D& grid) const {
  const Eigen::ArrayXd d = grid.points() - center;
  return half_width / (std::numbers::pi * (d.square() + half_width * half_width));
}

Eigen::ArrayXd detection_pdf(const PoissonDetection& model, const Grid1D& t_grid) {
  const Eigen::ArrayXd t = t_grid.points();
  return (t >= 0.0).select(model.lambda * (-model.lambda * t).exp(), 0.0);
}

DetectionStats detection_time_stats(const PoissonDetection& model) {
  return DetectionStats{1.0 / model.lambda, 1.0 / model.lambda};
}

DetectionStats detection_time_stats_numeric(const PoissonDetection& model, const Grid1D& t_grid) {
  const Eigen::ArrayXd f = detection_pdf(model, t_grid);
  const Eigen::ArrayXd t = t_grid.points();
  const double mean = trapezoid((t * f).matrix(), t_grid.step);
  const double second = trapezoid((t.square() * f).matrix(), t_grid.step);
  return DetectionStats{mean, std::sqrt(second - mean * mean)};
}

JointAmplitude full_stationary_state(const ComplexField& psi_n, double e_n,
                                     const PoissonDetection& model, const Grid1D& t_grid,
                                     const PhysicalConstants& pc) {
  const double norm = trapezoid(psi_n.values.abs2().matrix(), psi_n.grid.step);
  if (std::abs(norm - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "full_stationary_state: psi_n is not normalized (int |psi|^2 dx = " << norm << ")";
    throw GuardError(msg.str());
  }
  if (t_grid.start < 0.0)
    throw std::invalid_argument("full_stationary_state: detection starts at t = 0");
  if (std::exp(-model.lambda * t_grid.stop()) >= 1e-8) {
    std::ostringstream msg;
    msg << "full_stationary_state: t grid too short, e^(-lambda t_stop) = "
        << std::exp(-model.lambda * t_grid.stop()) << " >= 1e-8";
    throw GuardError(msg.str());
  }

  const Eigen::ArrayXd t = t_grid.points();
  Eigen::ArrayXcd chi(t_grid.count);
  const double root_lambda = std::sqrt(model.lambda);
  for (Eigen::Index j = 0; j < t_grid.count; ++j)
    chi(j) = std::polar(root_lambda * std::exp(-0.5 * model.lambda * t(j)),
                        -e_n * t(j) / pc.hbar);

  JointAmplitude amp;
  amp.x_grid = psi_n.grid;
  amp.t_grid = t_grid;
  amp.values = psi_n.values.matrix() * chi.matrix().transpose();
  return amp;
}

EnergyDistribution energy_distribution(double e_n, const PoissonDetection& model,
                                       const Grid1D& eps_grid, const PhysicalConstants& pc) {
  const LorentzianProfile profile{e_n, 0.5 * pc.hbar * model.lambda};
  return EnergyDistribution{profile, profile.sample(eps_grid)};
}

LorentzianProfile convolve_lorentzians(const LorentzianProfile& profile, double gamma,
                                       const PhysicalConstants& pc) {
  if (gamma < 0.0) throw std::invalid_argument("convolve_lorentzians: gamma must be >= 0");
  return LorentzianProfile{profile.center, profile.half_width + 0.5 * pc.hbar * gamma};
}

Eigen::ArrayXd convolved_samples_numeric(const LorentzianProfile& profile, double gamma,
                                         const PhysicalConstants& pc, const Grid1D& eval_grid) {
  if (gamma < 0.0) throw std::invalid_argument("convolved_samples_numeric: gamma must be >= 0");
  const double hw_g = 0.5 * pc.hbar * gamma;
  if (hw_g == 0.0) return profile.sample(eval_grid);  // delta-width factor

  // Inner quadrature domain wide enough that the discarded Lorentzian
  // tails contribute below the 1% comparison tolerances.
  const double reach = 100.0 * (profile.half_width + hw_g);
  const Grid1D inner = make_grid(-reach, reach, 65537);
  const Eigen::ArrayXd u = inner.points();
  const Eigen::ArrayXd f = profile.half_width /
                           (std::numbers::pi * (u.square() + profile.half_width * profile.half_width));
  const Eigen::ArrayXd w = trapezoid_weights(inner.count, inner.step);

  Eigen::ArrayXd out(eval_grid.count);
  for (Eigen::Index i = 0; i < eval_grid.count; ++i) {
    const Eigen::ArrayXd d = eval_grid.point(i) - profile.center - u;
    out(i) = (w * f * hw_g / (std::numbers::pi * (d.square() + hw_g * hw_g))).sum();
  }
  return out;
}

}  // namespace stqm
