// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <map>
#include <string>

#include "landau/constants.hpp"
#include "landau/errors.hpp"

namespace landau {

/// 2DEG and slot material/geometry parameters. SI units throughout:
/// density in 1/m^2, lengths in m, lifetimes in s.
struct SampleParams {
  double electron_density = 0.0;     // n_e, 1/m^2
  double effective_mass_ratio = 0.0; // m*/m0
  double rel_permittivity = 0.0;     // eps_r (= eps_bg)
  double slot_width = 0.0;           // d, m
  double qw_thickness = 0.0;         // d_QW, m
  double cr_lifetime = 0.0;          // tau, s
  std::map<int, double> mp_lifetimes;// tau_n, s, keyed by odd mode index

  double effective_mass() const;

  /// Lifetime of the n-th magnetoplasmon mode.
  double mp_lifetime(int n) const {
    auto it = mp_lifetimes.find(n);
    if (it == mp_lifetimes.end()) {
      throw domain_error("mp_lifetime: no lifetime configured for mode " +
                         std::to_string(n));
    }
    return it->second;
  }
};

inline void validate(const SampleParams& s) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw domain_error(std::string("SampleParams: ") + name +
                         " must be positive and finite");
    }
  };
  positive(s.electron_density, "electron_density");
  positive(s.effective_mass_ratio, "effective_mass_ratio");
  positive(s.rel_permittivity, "rel_permittivity");
  positive(s.slot_width, "slot_width");
  positive(s.qw_thickness, "qw_thickness");
  positive(s.cr_lifetime, "cr_lifetime");
  for (const auto& [n, tau] : s.mp_lifetimes) {
    if (n <= 0 || n % 2 == 0) {
      throw domain_error("SampleParams: mp_lifetimes keyed by odd positive "
                         "mode indices, got " + std::to_string(n));
    }
    positive(tau, "mp_lifetime");
  }
}

inline double SampleParams::effective_mass() const {
  return effective_mass_ratio * constants::electron_mass;
}

}  // namespace landau
