#pragma once

#include <Eigen/Core>

#include "stqm/constants.hpp"
#include "stqm/field.hpp"
#include "stqm/grid.hpp"

namespace stqm {

// Branch of the sqrt(-iw) multiplier. Conjugate exists as a perturbation
// hook for mutation checks in the verification suite.
enum class SqrtBranch { Principal, Conjugate };

// sqrt(d/dt) as a Fourier multiplier: each mode e^{-iwt} is multiplied by
// sqrt(-iw) = sqrt|w| e^{-i pi/4 sign(w)} (principal branch, zero at w = 0).
// The discrete operator is periodic; callers window signals that do not
// decay at the grid edges (see taper_window).
ComplexField half_derivative(const ComplexField& field,
                             SqrtBranch branch = SqrtBranch::Principal);

inline constexpr double kTaperFraction = 0.15;
inline constexpr double kTaperBeta = 14.0;

// Flat-top window: 1 in the interior, Kaiser-integrated ramps over
// `fraction` of each edge. The ramp's spectral leakage at the multiplier's
// w = 0 branch point sets the interior accuracy of half_derivative on
// non-decaying signals; the defaults hold the leakage below 1e-6 down to
// |w| = 0.5 on the reference 2^14-point grids.
Eigen::ArrayXd taper_window(Eigen::Index count, double fraction = kTaperFraction,
                            double beta = kTaperBeta);

// Index range [first, last) on which taper_window equals one.
std::pair<Eigen::Index, Eigen::Index> taper_flat_range(Eigen::Index count,
                                                       double fraction = kTaperFraction);

// Psi~(p & eps) on the conjugate grids implied by the sampling theorem.
struct JointSpectrum {
  Grid1D p_grid;
  Grid1D eps_grid;
  Eigen::MatrixXcd values;  // values(i, j) at (p_i, eps_j)
};

// (1/2 pi hbar) int int e^{-i(px - eps t)/hbar} Psi(x & t) dx dt.
// Note the sign asymmetry (-px, +eps t); Parseval holds with unit constant.
// Rejects amplitudes that fail |Psi| < 1e-6 max|Psi| on any grid edge.
JointSpectrum joint_fourier(const JointAmplitude& amp, const PhysicalConstants& pc);

// <h> = int int |Psi~|^2 eps dp deps. The heavy-tailed marginals appearing
// in this project (Lorentzian profiles) have a mean only as a symmetric
// principal value: truncate eps symmetrically about the peak.
double mean_energy(const JointSpectrum& spec);

// Same with weight p.
double mean_momentum(const JointSpectrum& spec);

}  // namespace stqm
