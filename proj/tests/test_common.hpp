// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "landau/coupling.hpp"
#include "landau/sample.hpp"

namespace testutil {

// Measured sample of the slot-cavity device.
inline landau::SampleParams paper_sample() {
  landau::SampleParams s;
  s.electron_density = 3.6e15;  // 3.6e11 cm^-2
  s.effective_mass_ratio = 0.076;
  s.rel_permittivity = 6.98;
  s.slot_width = 4e-6;
  s.qw_thickness = 30e-9;
  s.cr_lifetime = 51.9e-12;
  s.mp_lifetimes = {{1, 1.2e-12}, {3, 1.2e-12}};
  return s;
}

inline landau::CouplingSet paper_couplings() {
  landau::CouplingSet c;
  c.cavity_frequency = landau::Frequency{0.925};
  c.cr_coupling = landau::Frequency{0.18 * 0.925};
  c.mp_couplings[1] = landau::Frequency{0.084 * 0.925};
  c.mp_couplings[3] = landau::Frequency{0.084 * 0.925};
  return c;
}

inline landau::SampleParams comsol_sample() {
  landau::SampleParams s = paper_sample();
  s.effective_mass_ratio = 0.070;
  s.rel_permittivity = 9.77;
  s.mp_lifetimes = {{1, 1.2e-12}, {3, 1.2e-12}, {5, 1.2e-12}};
  return s;
}

inline landau::CouplingSet comsol_couplings() {
  landau::CouplingSet c;
  c.cavity_frequency = landau::Frequency{0.870};
  c.cr_coupling = landau::Frequency{0.13 * 0.870};
  c.mp_couplings[1] = landau::Frequency{0.062 * 0.870};
  c.mp_couplings[3] = landau::Frequency{0.062 * 0.870};
  c.mp_couplings[5] = landau::Frequency{0.062 * 0.870};
  return c;
}

/// Deterministic uniform double in [lo, hi) for property-style tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    const double u = (gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace testutil
