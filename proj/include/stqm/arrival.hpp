#pragma once

#include <Eigen/Core>

#include <utility>

#include "stqm/constants.hpp"
#include "stqm/field.hpp"
#include "stqm/grid.hpp"
#include "stqm/spectral.hpp"
#include "stqm/spectrum.hpp"

namespace stqm {

// rho(t|x): probability density of the detection instant given detection
// at x; nonnegative by construction.
struct ArrivalDensity {
  Grid1D t_grid;
  double x = 0.0;
  Eigen::ArrayXd values;
};

struct MirrorResidual {
  double value = 0.0;
  bool defined = false;  // false for the 0/0 case (zero field)
};

// Momentum eigenfunction on the time axis:
// phi_P(t) = sqrt(P / 2 pi m hbar) e^{-i E_P t / hbar}, E_P = P^2 / 2m.
ComplexField phi_eigenfunction(double p, const Grid1D& t_grid, const PhysicalConstants& pc);

// P = +-sqrt(2 m hbar w); negative w is rejected (imaginary P).
std::pair<double, double> dispersion(double w, const PhysicalConstants& pc);

// General mirror solution at fixed x by trapezoid quadrature over P:
// phi±(t|x) = int C±_P sqrt(P / 2 pi m hbar) e^{(±iPx - iE_P t)/hbar} dP.
// Errors out when the P grid cannot resolve the integrand phase
// (step * max|dPhi/dP| >= pi/4), naming the required grid size.
PseudoSpinorField mirror_solution(const MomentumSpectrum& spec, double x, const Grid1D& t_grid,
                                  const PhysicalConstants& pc);

// rho(t|x) = |phi+(t|x)|^2 + |phi-(t|x)|^2.
ArrivalDensity arrival_density(const MomentumSpectrum& spec, double x, const Grid1D& t_grid,
                               const PhysicalConstants& pc);

// Conventional free-particle packet for the current-density comparison:
// psi(x|t) = (2 pi hbar)^{-1/2} int C+_P e^{i(Px - E_P t)/hbar} dP.
// Defined for one-sided spectra only (C- must vanish).
ComplexField schrodinger_packet(const MomentumSpectrum& spec, const Grid1D& x_grid, double t,
                                const PhysicalConstants& pc);

// J(x, t) = (hbar/m) Im(psi* dpsi/dx) on t_grid, via central differences
// of schrodinger_packet in x.
Eigen::ArrayXd current_density(const MomentumSpectrum& spec, double x, const Grid1D& t_grid,
                               const PhysicalConstants& pc, double dx = 1e-4);

// Relative L2 mismatch of the two sides of the free mirror dynamics,
//   sigma_z sqrt(2 m i hbar) D^{1/2} phi  vs  -i hbar d phi / dx,
// the sign for which both sides equal P phi_P on plus-branch
// eigenfunctions. Left side is spectral, right side a central difference
// of mirror_solution; both are evaluated under the standard flat-top taper
// and compared on its flat interior.
MirrorResidual mirror_residual(const MomentumSpectrum& spec, double x, double dx,
                               const Grid1D& t_grid, const PhysicalConstants& pc,
                               SqrtBranch branch = SqrtBranch::Principal);

}  // namespace stqm
