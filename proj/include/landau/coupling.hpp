// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "landau/dispersion.hpp"
#include "landau/errors.hpp"
#include "landau/sample.hpp"
#include "landau/units.hpp"

namespace landau {

/// Bare cavity frequency plus the B-independent zero-detuning coupling
/// strengths {g, g_n}. Mode indices are the odd slot momenta n.
struct CouplingSet {
  Frequency cavity_frequency{};
  Frequency cr_coupling{};
  std::map<int, Frequency> mp_couplings;  // ordered, odd keys

  std::vector<int> mode_indices() const {
    std::vector<int> out;
    out.reserve(mp_couplings.size());
    for (const auto& [n, g] : mp_couplings) out.push_back(n);
    return out;
  }
};

inline void validate(const CouplingSet& c) {
  if (!(c.cavity_frequency.thz > 0.0) || !std::isfinite(c.cavity_frequency.thz)) {
    throw domain_error("CouplingSet: cavity_frequency must be > 0");
  }
  if (c.cr_coupling.thz < 0.0 || !std::isfinite(c.cr_coupling.thz)) {
    throw domain_error("CouplingSet: cr_coupling must be >= 0");
  }
  for (const auto& [n, g] : c.mp_couplings) {
    if (n < 1 || n % 2 == 0) {
      throw domain_error("CouplingSet: mode indices must be odd positive, "
                         "got " + std::to_string(n));
    }
    if (g.thz < 0.0 || !std::isfinite(g.thz)) {
      throw domain_error("CouplingSet: coupling for mode " +
                         std::to_string(n) + " must be >= 0");
    }
  }
}

struct EffectiveCouplings {
  Frequency gbar{};                 // CR
  std::map<int, Frequency> gbar_n;  // per MP mode
};

/// B-dependent couplings: gbar = g sqrt(nu_c/nu_0) and
/// gbar_n = g_n sqrt(nu_MP_n/nu_0) with nu_MP_n taken at k = n pi / d.
inline EffectiveCouplings effective_couplings(const CouplingSet& c,
                                              double b_tesla,
                                              const SampleParams& s) {
  const double nu0 = c.cavity_frequency.thz;
  EffectiveCouplings out;
  out.gbar = Frequency{c.cr_coupling.thz *
                       std::sqrt(cyclotron_frequency(b_tesla, s).thz / nu0)};
  for (const auto& [n, g] : c.mp_couplings) {
    const double k = slot_momentum(n, s.slot_width);
    const double nu_mp = magnetoplasmon_frequency(k, b_tesla, s).thz;
    out.gbar_n[n] = Frequency{g.thz * std::sqrt(nu_mp / nu0)};
  }
  return out;
}

/// Diamagnetic coefficient D = (g^2 + sum g_n^2)/nu_0; the B-dependence of
/// the gbar form cancels exactly.
inline Frequency diamagnetic_coefficient(const CouplingSet& c) {
  double sum = c.cr_coupling.thz * c.cr_coupling.thz;
  for (const auto& [n, g] : c.mp_couplings) sum += g.thz * g.thz;
  return Frequency{sum / c.cavity_frequency.thz};
}

}  // namespace landau
