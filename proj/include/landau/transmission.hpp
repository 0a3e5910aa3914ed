// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <vector>

#include "landau/coupling.hpp"
#include "landau/errors.hpp"
#include "landau/sample.hpp"
#include "landau/transfer_matrix.hpp"

namespace landau {

/// Fabry-Perot realization of the slot-cavity system: thin gold mirrors
/// around GaAs spacers with the quantum well at the center.
struct StackGeometry {
  double gold_thickness_m = 10e-9;
  double gold_plasma_thz = 2180.0;
  double gold_scattering_thz = 6.45;
  double gaas_thickness_m = 22.35e-6;
  double gaas_value = 3.6;
  bool gaas_value_is_index = false;  // interpret gaas_value as n instead of eps
  double effective_length_m = 84.2e-6;

  double gaas_permittivity() const {
    return gaas_value_is_index ? gaas_value * gaas_value : gaas_value;
  }
};

/// vacuum | Au | GaAs | QW | GaAs | Au | vacuum. With `passive`, the well
/// keeps its background permittivity (all pole strengths off).
inline LayerStack fabry_perot_stack(const StackGeometry& geom,
                                    const SampleParams& s,
                                    const CouplingSet& c, double b_tesla,
                                    Polarization pol, bool passive = false) {
  LayerStack stack;
  stack.ambient = ConstantEps{Complex{1.0, 0.0}};
  const DrudeMetal gold{geom.gold_plasma_thz, geom.gold_scattering_thz};
  const ConstantEps gaas{Complex{geom.gaas_permittivity(), 0.0}};

  PermittivityModel qw;
  if (passive) {
    qw = ConstantEps{Complex{s.rel_permittivity, 0.0}};
  } else {
    qw = Gyrotropic2DEG{s, c, geom.effective_length_m, b_tesla, pol};
  }

  stack.layers = {
      Layer{geom.gold_thickness_m, gold},
      Layer{geom.gaas_thickness_m, gaas},
      Layer{s.qw_thickness, qw},
      Layer{geom.gaas_thickness_m, gaas},
      Layer{geom.gold_thickness_m, gold},
  };
  return stack;
}

/// Rectangular transmittance grid over (B, frequency).
struct TransmissionMap {
  std::vector<double> field_tesla;  // ascending
  std::vector<double> freq_thz;     // ascending
  std::vector<double> values;       // row-major [field][freq]

  double at(std::size_t bi, std::size_t fi) const {
    return values[bi * freq_thz.size() + fi];
  }
};

inline TransmissionMap transmission_map(const StackGeometry& geom,
                                        const SampleParams& s,
                                        const CouplingSet& c,
                                        const std::vector<double>& fields,
                                        const std::vector<double>& freqs,
                                        Polarization pol,
                                        bool passive = false) {
  if (fields.empty() || freqs.empty()) {
    throw domain_error("transmission_map: axes must be non-empty");
  }
  for (std::size_t i = 1; i < fields.size(); ++i) {
    if (!(fields[i] > fields[i - 1])) {
      throw domain_error("transmission_map: field axis must be ascending");
    }
  }
  for (std::size_t i = 1; i < freqs.size(); ++i) {
    if (!(freqs[i] > freqs[i - 1])) {
      throw domain_error("transmission_map: frequency axis must be ascending");
    }
  }
  TransmissionMap map;
  map.field_tesla = fields;
  map.freq_thz = freqs;
  map.values.resize(fields.size() * freqs.size());
  for (std::size_t bi = 0; bi < fields.size(); ++bi) {
    const LayerStack stack =
        fabry_perot_stack(geom, s, c, fields[bi], pol, passive);
    for (std::size_t fi = 0; fi < freqs.size(); ++fi) {
      map.values[bi * freqs.size() + fi] =
          transfer_matrix_transmittance(stack, freqs[fi]).transmittance;
    }
  }
  return map;
}

}  // namespace landau
