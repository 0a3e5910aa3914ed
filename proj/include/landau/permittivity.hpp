// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <variant>

#include "landau/constants.hpp"
#include "landau/coupling.hpp"
#include "landau/dispersion.hpp"
#include "landau/errors.hpp"
#include "landau/sample.hpp"

namespace landau {

/// Circular polarization sense relative to the cyclotron motion.
enum class Polarization { CRActive, CRInactive };

/// Drude metal, eps = 1 - nu_pl^2 / (nu (nu + i gamma)), all in THz.
/// Time convention e^{-i omega t}: Im(eps) >= 0 for nu > 0.
inline Complex drude_metal(double plasma_thz, double scattering_thz,
                           double nu_thz) {
  if (!(nu_thz > 0.0)) {
    throw domain_error("drude_metal: frequency must be > 0");
  }
  return 1.0 - plasma_thz * plasma_thz /
                   (nu_thz * Complex{nu_thz, scattering_thz});
}

/// Magneto-optical permittivity of the quantum-well layer. The CR and MP
/// pole strengths derive from the zero-detuning couplings through
/// nu_pl^2 = g^2 eps_bg L_eff / d_QW (and likewise per mode), so the layer
/// reproduces the Hopfield-model coupling when embedded in the cavity.
inline Complex qw_permittivity(const SampleParams& s, const CouplingSet& c,
                               double effective_length_m, double b_tesla,
                               double nu_thz, Polarization pol) {
  if (!(nu_thz > 0.0)) {
    throw domain_error("qw_permittivity: frequency must be > 0");
  }
  if (!(s.qw_thickness > 0.0) || !(effective_length_m > 0.0)) {
    throw config_error("qw_permittivity: d_QW and L_eff must be > 0");
  }
  const double sigma = (pol == Polarization::CRActive) ? 1.0 : -1.0;
  const double eps_bg = s.rel_permittivity;
  const double geom = eps_bg * effective_length_m / s.qw_thickness;
  using constants::two_pi;

  Complex eps{eps_bg, 0.0};

  const double wpl2 = c.cr_coupling.thz * c.cr_coupling.thz * geom;
  if (wpl2 > 0.0) {
    const double gamma = 1.0 / (two_pi * s.cr_lifetime * 1e12);  // THz
    const double pole = sigma * cyclotron_frequency(b_tesla, s).thz;
    eps -= wpl2 / (nu_thz * Complex{nu_thz - pole, gamma});
  }
  for (const auto& [n, g] : c.mp_couplings) {
    const double wpl2_n = g.thz * g.thz * geom;
    if (wpl2_n <= 0.0) continue;
    const double gamma_n = 1.0 / (two_pi * s.mp_lifetime(n) * 1e12);
    const double k = slot_momentum(n, s.slot_width);
    const double pole = sigma * magnetoplasmon_frequency(k, b_tesla, s).thz;
    eps -= wpl2_n / (nu_thz * Complex{nu_thz - pole, gamma_n});
  }
  return eps;
}

struct ConstantEps {
  Complex value{1.0, 0.0};
};

struct DrudeMetal {
  double plasma_thz = 0.0;
  double scattering_thz = 0.0;
};

struct Gyrotropic2DEG {
  SampleParams sample;
  CouplingSet couplings;
  double effective_length_m = 0.0;
  double field_tesla = 0.0;
  Polarization polarization = Polarization::CRActive;
};

using PermittivityModel = std::variant<ConstantEps, DrudeMetal, Gyrotropic2DEG>;

inline Complex evaluate(const PermittivityModel& model, double nu_thz) {
  return std::visit(
      [nu_thz](const auto& m) -> Complex {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantEps>) {
          return m.value;
        } else if constexpr (std::is_same_v<T, DrudeMetal>) {
          return drude_metal(m.plasma_thz, m.scattering_thz, nu_thz);
        } else {
          return qw_permittivity(m.sample, m.couplings, m.effective_length_m,
                                 m.field_tesla, nu_thz, m.polarization);
        }
      },
      model);
}

}  // namespace landau
