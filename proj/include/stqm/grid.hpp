#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>

namespace stqm {

// Uniform sampling grid for one coordinate (t, x, P or epsilon).
// point(i) = start + i * step for 0 <= i < count.
struct Grid1D {
  double start = 0.0;
  double step = 1.0;
  Eigen::Index count = 2;

  double point(Eigen::Index i) const { return start + static_cast<double>(i) * step; }
  double stop() const { return point(count - 1); }
  double span() const { return stop() - start; }

  Eigen::ArrayXd points() const {
    return start + step * Eigen::ArrayXd::LinSpaced(count, 0.0, static_cast<double>(count - 1));
  }

  // Index of a value that lies on the grid; rejects off-grid values.
  Eigen::Index index_of(double v) const {
    const double raw = (v - start) / step;
    const auto i = static_cast<Eigen::Index>(std::llround(raw));
    if (i < 0 || i >= count || std::abs(raw - static_cast<double>(i)) > 1e-6)
      throw std::invalid_argument("Grid1D::index_of: value is not a grid point");
    return i;
  }
};

// Endpoint-inclusive uniform grid with step = (stop - start) / (count - 1).
inline Grid1D make_grid(double start, double stop, Eigen::Index count) {
  if (!std::isfinite(start) || !std::isfinite(stop))
    throw std::invalid_argument("make_grid: bounds must be finite");
  if (!(stop > start))
    throw std::invalid_argument("make_grid: stop must exceed start");
  if (count < 2)
    throw std::invalid_argument("make_grid: count must be at least 2");
  return Grid1D{start, (stop - start) / static_cast<double>(count - 1), count};
}

}  // namespace stqm
