#pragma once

#include <stdexcept>

namespace stqm {

// Physical constants threaded explicitly into every physics operation.
// Natural units (hbar = mass = 1) by default.
struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;

  PhysicalConstants() = default;
  PhysicalConstants(double hbar_, double mass_) : hbar(hbar_), mass(mass_) {
    if (!(hbar > 0.0) || !(mass > 0.0))
      throw std::invalid_argument("PhysicalConstants: hbar and mass must be positive");
  }
};

}  // namespace stqm
