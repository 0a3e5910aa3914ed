// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>

#include "landau/constants.hpp"
#include "landau/errors.hpp"
#include "landau/sample.hpp"
#include "landau/units.hpp"

namespace landau {

namespace detail {
inline void require_nonnegative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw domain_error(std::string(what) + " must be finite and >= 0");
  }
}
}  // namespace detail

/// 2D plasmon dispersion in the long-wavelength limit,
/// omega_p(k) = sqrt(k e^2 n_e / (2 m* eps0 eps_r)).
inline Frequency plasmon_frequency(double k, const SampleParams& s) {
  detail::require_nonnegative(k, "plasmon_frequency: k");
  using namespace constants;
  const double omega2 = k * elementary_charge * elementary_charge *
                        s.electron_density /
                        (2.0 * s.effective_mass() * vacuum_permittivity *
                         s.rel_permittivity);
  return frequency_from_angular(std::sqrt(omega2));
}

/// Cyclotron frequency omega_c = e B / m*. Field orientation is handled by
/// the polarization choice downstream, so B < 0 is rejected here.
inline Frequency cyclotron_frequency(double b_tesla, const SampleParams& s) {
  detail::require_nonnegative(b_tesla, "cyclotron_frequency: B");
  using namespace constants;
  return frequency_from_angular(elementary_charge * b_tesla /
                                s.effective_mass());
}

/// Magnetoplasmon dispersion, omega_MP^2 = omega_p^2 + omega_c^2.
inline Frequency magnetoplasmon_frequency(double k, double b_tesla,
                                          const SampleParams& s) {
  const double p = plasmon_frequency(k, s).thz;
  const double c = cyclotron_frequency(b_tesla, s).thz;
  return Frequency{std::hypot(p, c)};
}

/// In-plane momentum supplied by a slot of width d: k = n pi / d, with n
/// restricted to odd integers by the field symmetry.
inline double slot_momentum(int n, double slot_width) {
  if (n < 1 || n % 2 == 0) {
    throw domain_error("slot_momentum: mode index must be an odd positive "
                       "integer, got " + std::to_string(n));
  }
  if (!(slot_width > 0.0) || !std::isfinite(slot_width)) {
    throw domain_error("slot_momentum: slot width must be positive");
  }
  return static_cast<double>(n) * constants::pi / slot_width;
}

/// Inverts the magnetoplasmon dispersion: the field B at which
/// nu_MP(k, B) equals `target`. Below the k-point's plasmon frequency no
/// real field exists; the error carries that minimum attainable frequency.
inline double zero_detuning_field(Frequency target, double k,
                                  const SampleParams& s) {
  require_finite_frequency(target, "zero_detuning_field");
  const double nu_p = plasmon_frequency(k, s).thz;
  if (target.thz < nu_p) {
    throw no_solution_error(
        "zero_detuning_field: target below the minimum attainable "
        "magnetoplasmon frequency",
        nu_p);
  }
  const double nu_c = std::sqrt(target.thz * target.thz - nu_p * nu_p);
  using namespace constants;
  return angular_rad_per_s(Frequency{nu_c}) * s.effective_mass() /
         elementary_charge;
}

}  // namespace landau
