// Grid, quadrature and momentum-spectrum construction.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "stqm/errors.hpp"
#include "stqm/field.hpp"
#include "stqm/grid.hpp"
#include "stqm/quadrature.hpp"
#include "stqm/spectrum.hpp"

using namespace stqm;

TEST_CASE("make_grid: endpoints and step") {
  const Grid1D g = make_grid(0.0, 1.0, 2);
  CHECK(g.point(0) == 0.0);
  CHECK(g.point(1) == 1.0);

  const Grid1D lattice = make_grid(0.0, 10.0, 11);
  CHECK(lattice.step == doctest::Approx(1.0));
  for (int i = 0; i <= 10; ++i) CHECK(lattice.point(i) == doctest::Approx(i));

  const Grid1D sym = make_grid(-5.0, 5.0, 101);
  CHECK(sym.step == doctest::Approx(0.1));
  CHECK(sym.point(50) == doctest::Approx(0.0));
}

TEST_CASE("make_grid: rejects bad arguments") {
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1.0, 0.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0.0, std::numeric_limits<double>::infinity(), 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_grid(std::nan(""), 1.0, 10), std::invalid_argument);
}

TEST_CASE("grid round-trip: index_of(point(i)) == i") {
  const Grid1D grids[] = {make_grid(-7.3, 12.9, 517), make_grid(0.01, 10.0, 4096),
                          make_grid(-200.0, 200.0, 1000)};
  for (const Grid1D& g : grids)
    for (Eigen::Index i = 0; i < g.count; i += 7) CHECK(g.index_of(g.point(i)) == i);
  CHECK_THROWS_AS(grids[0].index_of(grids[0].point(3) + 0.4 * grids[0].step),
                  std::invalid_argument);
}

TEST_CASE("points() matches point(i) exactly") {
  const Grid1D g = make_grid(-3.0, 9.0, 64);
  const Eigen::ArrayXd p = g.points();
  for (Eigen::Index i = 0; i < g.count; ++i) CHECK(p(i) == g.point(i));
}

TEST_CASE("trapezoid: known integrals") {
  const Grid1D g = make_grid(0.0, 1.0, 4001);
  const Eigen::ArrayXd x = g.points();
  CHECK(trapezoid(x.square().matrix(), g.step) == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
  CHECK(trapezoid_2d(Eigen::MatrixXd::Ones(5, 9), 0.25, 0.125) == doctest::Approx(1.0));
  const Eigen::ArrayXd c = cumulative_trapezoid(x, g.step);
  CHECK(c(0) == 0.0);
  CHECK(c(g.count - 1) == doctest::Approx(0.5));
}

TEST_CASE("gaussian_spectrum: normalization and branch selection") {
  const Grid1D g = make_grid(0.01, 10.0, 2048);
  const MomentumSpectrum plus = gaussian_spectrum(5.0, 0.25, g, Branch::Plus);
  CHECK(trapezoid(plus.c_plus.abs2().matrix(), g.step) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(plus.c_minus.abs2().maxCoeff() == 0.0);

  const MomentumSpectrum both = gaussian_spectrum(5.0, 0.25, g, Branch::Both);
  CHECK(trapezoid(both.c_plus.abs2().matrix(), g.step) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(trapezoid(both.c_minus.abs2().matrix(), g.step) == doctest::Approx(0.5).epsilon(1e-6));

  // mode of |C+|^2 sits at P0
  Eigen::Index peak = 0;
  plus.c_plus.abs2().maxCoeff(&peak);
  CHECK(g.point(peak) == doctest::Approx(5.0).epsilon(1e-3));
}

TEST_CASE("gaussian_spectrum: guards") {
  const Grid1D g = make_grid(0.01, 10.0, 512);
  CHECK_THROWS_AS(gaussian_spectrum(5.0, 0.25, make_grid(-1.0, 10.0, 128), Branch::Plus),
                  std::invalid_argument);
  // sigma so large that > 1% of the mass lies off the grid
  CHECK_THROWS_AS(gaussian_spectrum(5.0, 4.0, g, Branch::Plus), GuardError);
  // borderline-tight grid stays fine
  CHECK_NOTHROW(gaussian_spectrum(5.0, 0.5, g, Branch::Plus));
}

TEST_CASE("normalize_spectrum: scaling, idempotence, single bin") {
  const Grid1D g = make_grid(1.0, 9.0, 1001);
  MomentumSpectrum spec;
  spec.grid = g;
  spec.c_plus = Eigen::ArrayXcd::Zero(g.count);
  spec.c_minus = Eigen::ArrayXcd::Zero(g.count);
  spec.c_plus += Complex(0.5, 0.0);
  spec.c_plus *= 2.0 / std::sqrt(spec.total_weight());  // weight 4
  CHECK(spec.total_weight() == doctest::Approx(4.0));
  const MomentumSpectrum unit = normalize_spectrum(spec);
  CHECK((unit.c_plus / spec.c_plus).abs().maxCoeff() == doctest::Approx(0.5));

  const MomentumSpectrum again = normalize_spectrum(unit);
  CHECK(((again.c_plus - unit.c_plus).abs() / unit.c_plus.abs().maxCoeff()).maxCoeff() < 1e-12);

  MomentumSpectrum delta;
  delta.grid = g;
  delta.c_plus = Eigen::ArrayXcd::Zero(g.count);
  delta.c_minus = Eigen::ArrayXcd::Zero(g.count);
  delta.c_plus(500) = Complex(3.0, 0.0);
  const MomentumSpectrum dn = normalize_spectrum(delta);
  CHECK(std::norm(dn.c_plus(500)) * g.step == doctest::Approx(1.0));

  MomentumSpectrum zero;
  zero.grid = g;
  zero.c_plus = Eigen::ArrayXcd::Zero(g.count);
  zero.c_minus = Eigen::ArrayXcd::Zero(g.count);
  CHECK_THROWS_AS(normalize_spectrum(zero), std::invalid_argument);
}

TEST_CASE("gaussian_spectrum: constructor output is already normalized") {
  const Grid1D g = make_grid(0.01, 10.0, 2048);
  const MomentumSpectrum spec = gaussian_spectrum(5.0, 0.25, g, Branch::Both);
  const MomentumSpectrum renorm = normalize_spectrum(spec);
  const double scale = spec.c_plus.abs().maxCoeff();
  CHECK(((renorm.c_plus - spec.c_plus).abs() / scale).maxCoeff() < 1e-12);
  CHECK(((renorm.c_minus - spec.c_minus).abs() / scale).maxCoeff() < 1e-12);
}

TEST_CASE("gaussian_spectrum: truncated mass matches the erf oracle") {
  // Independent check of the 1% truncation guard's bookkeeping: the
  // trapezoid weight of the truncated, unnormalized Gaussian equals the
  // closed-form erf mass.
  const double p0 = 5.0, sigma = 0.8;
  const Grid1D g = make_grid(3.0, 8.0, 20001);
  const Eigen::ArrayXd p = g.points();
  const Eigen::ArrayXd c2 = (-(p - p0).square() / (2.0 * sigma * sigma)).exp();
  const double numeric = trapezoid(c2.matrix(), g.step);
  const double norm = sigma * std::sqrt(2.0 * std::numbers::pi);
  const double inv = 1.0 / (sigma * std::numbers::sqrt2);
  const double analytic = 0.5 * norm * (std::erf((8.0 - p0) * inv) - std::erf((3.0 - p0) * inv));
  CHECK(numeric == doctest::Approx(analytic).epsilon(1e-9));
}

TEST_CASE("PhysicalConstants: validation") {
  CHECK_NOTHROW(PhysicalConstants(2.0, 0.5));
  CHECK_THROWS_AS(PhysicalConstants(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PhysicalConstants(1.0, -1.0), std::invalid_argument);
}
