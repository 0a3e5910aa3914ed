// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <compare>

#include "landau/constants.hpp"
#include "landau/errors.hpp"

namespace landau {

/// Ordinary frequency nu = omega/2pi, in THz. All public interfaces speak
/// ordinary THz; angular rad/s appears only through the two conversion
/// routines below.
struct Frequency {
  double thz = 0.0;

  friend auto operator<=>(const Frequency&, const Frequency&) = default;
};

inline Frequency terahertz(double value) { return Frequency{value}; }

/// The single THz <-> rad/s conversion point.
inline double angular_rad_per_s(Frequency f) {
  return f.thz * constants::two_pi * 1e12;
}

inline Frequency frequency_from_angular(double omega_rad_per_s) {
  return Frequency{omega_rad_per_s / (constants::two_pi * 1e12)};
}

inline void require_finite_frequency(Frequency f, const char* what) {
  if (!std::isfinite(f.thz)) {
    throw domain_error(std::string(what) + ": frequency must be finite");
  }
}

}  // namespace landau
