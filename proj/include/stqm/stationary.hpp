#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "stqm/constants.hpp"
#include "stqm/field.hpp"
#include "stqm/grid.hpp"

namespace stqm {

// Memoryless detection with rate Lambda: f(t) = Lambda e^{-Lambda t} for
// t >= 0, zero before. <T> = Delta T = 1/Lambda.
struct PoissonDetection {
  double lambda = 1.0;

  PoissonDetection() = default;
  explicit PoissonDetection(double lambda_) : lambda(lambda_) {
    if (!(lambda > 0.0))
      throw std::invalid_argument("PoissonDetection: lambda must be positive");
  }
};

// Cauchy-shaped energy profile (1/pi) hw / ((eps - center)^2 + hw^2).
// Mode and FWHM are the meaningful moments; the variance does not exist.
struct LorentzianProfile {
  double center = 0.0;
  double half_width = 1.0;

  double value(double eps) const {
    const double d = eps - center;
    return half_width / (std::numbers::pi * (d * d + half_width * half_width));
  }
  double fwhm() const { return 2.0 * half_width; }
  double peak() const { return 1.0 / (std::numbers::pi * half_width); }
  Eigen::ArrayXd sample(const Grid1D& grid) const;
};

struct DetectionStats {
  double mean = 0.0;
  double stddev = 0.0;
};

Eigen::ArrayXd detection_pdf(const PoissonDetection& model, const Grid1D& t_grid);

// Analytic (1/Lambda, 1/Lambda).
DetectionStats detection_time_stats(const PoissonDetection& model);

// Trapezoid cross-check of the analytic statistics on an explicit grid.
DetectionStats detection_time_stats_numeric(const PoissonDetection& model, const Grid1D& t_grid);

// Psi(x & t) = psi_n(x) sqrt(Lambda) e^{-Lambda t/2 - i E_n t/hbar}.
// Requires psi_n normalized, t_grid.start >= 0 and a grid long enough that
// e^{-Lambda t_stop} < 1e-8.
JointAmplitude full_stationary_state(const ComplexField& psi_n, double e_n,
                                     const PoissonDetection& model, const Grid1D& t_grid,
                                     const PhysicalConstants& pc);

struct EnergyDistribution {
  LorentzianProfile profile;
  Eigen::ArrayXd samples;
};

// |chi(eps)|^2: Lorentzian centered at E_n with half-width hbar Lambda / 2
// (FWHM hbar Lambda, peak 2 / (pi hbar Lambda)).
EnergyDistribution energy_distribution(double e_n, const PoissonDetection& model,
                                       const Grid1D& eps_grid, const PhysicalConstants& pc);

// Convolution with the natural-linewidth Lorentzian of rate gamma: same
// center, half-width grown by hbar gamma / 2 (width Lambda + Gamma, peak
// 1 / pi (Lambda + Gamma) in rate units).
LorentzianProfile convolve_lorentzians(const LorentzianProfile& profile, double gamma,
                                       const PhysicalConstants& pc);

// Brute-force numerical convolution of the two sampled Lorentzians,
// evaluated on eval_grid; cross-checks convolve_lorentzians.
Eigen::ArrayXd convolved_samples_numeric(const LorentzianProfile& profile, double gamma,
                                         const PhysicalConstants& pc, const Grid1D& eval_grid);

}  // namespace stqm
