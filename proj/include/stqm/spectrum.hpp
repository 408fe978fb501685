#pragma once

#include <Eigen/Core>

#include "stqm/constants.hpp"
#include "stqm/grid.hpp"

namespace stqm {

enum class Branch { Plus, Minus, Both };

// Momentum-branch amplitudes C+_P and C-_P on a grid of strictly positive P.
// |C+_P|^2 and |C-_P|^2 are the probability densities of momentum +P and -P;
// a normalized spectrum satisfies int (|C+|^2 + |C-|^2) dP = 1 under the
// trapezoid rule.
struct MomentumSpectrum {
  Grid1D grid;
  Eigen::ArrayXcd c_plus;
  Eigen::ArrayXcd c_minus;

  double total_weight() const;
};

// Rescales so the unit-integral invariant holds; rejects the zero spectrum.
MomentumSpectrum normalize_spectrum(const MomentumSpectrum& spec);

// C on the selected branch(es) proportional to exp(-(P-P0)^2 / 4 sigma^2),
// truncated to the grid and normalized. Rejects grids touching P <= 0 and
// spectra leaving more than 1% of the untruncated |C|^2 mass off the grid.
MomentumSpectrum gaussian_spectrum(double p0, double sigma, const Grid1D& grid, Branch branch);

// C±_P -> C±_P e^{±iPa/hbar}: the mirror solution of the result at x equals
// that of the original at x + a.
MomentumSpectrum translated(const MomentumSpectrum& spec, double a, const PhysicalConstants& pc);

// C±_P -> C±_P e^{iE_P t0/hbar}: arrival histories shift by t0.
MomentumSpectrum time_shifted(const MomentumSpectrum& spec, double t0, const PhysicalConstants& pc);

}  // namespace stqm
