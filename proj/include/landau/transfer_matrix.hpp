// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "landau/constants.hpp"
#include "landau/errors.hpp"
#include "landau/permittivity.hpp"

namespace landau {

struct Layer {
  double thickness_m = 0.0;
  PermittivityModel model;
};

/// Ordered optical layers with a common ambient on both sides. Ambient must
/// evaluate to a real positive permittivity (propagating in/out waves).
struct LayerStack {
  std::vector<Layer> layers;
  PermittivityModel ambient = ConstantEps{Complex{1.0, 0.0}};
};

inline void validate(const LayerStack& stack) {
  if (stack.layers.empty()) {
    throw domain_error("LayerStack: at least one layer required");
  }
  for (const auto& l : stack.layers) {
    if (!(l.thickness_m > 0.0)) {
      throw domain_error("LayerStack: thicknesses must be > 0");
    }
  }
}

struct TransmittanceResult {
  double transmittance = 0.0;
  double reflectance = 0.0;
};

namespace detail {

/// Principal square root with Im >= 0: decaying waves in absorbing media
/// under the e^{-i omega t} convention.
inline Complex refractive_index(Complex eps) {
  Complex n = std::sqrt(eps);
  if (n.imag() < 0.0) n = -n;
  return n;
}

}  // namespace detail

/// Normal-incidence transmittance/reflectance of the stack via the 2x2
/// characteristic-matrix product. Per layer, delta = 2 pi nu n t / c and
/// the admittance equals n (units of the vacuum admittance):
///
///   M = [[cos d, -i sin d / n], [-i n sin d, cos d]]
///
/// For lossless stacks T + R = 1 to rounding.
inline TransmittanceResult transfer_matrix_transmittance(
    const LayerStack& stack, double nu_thz) {
  validate(stack);
  if (!(nu_thz > 0.0)) {
    throw domain_error("transfer_matrix_transmittance: frequency must be > 0");
  }
  const Complex eps_amb = evaluate(stack.ambient, nu_thz);
  if (!(eps_amb.real() > 0.0) || std::abs(eps_amb.imag()) > 0.0) {
    throw domain_error(
        "transfer_matrix_transmittance: ambient permittivity must be real "
        "positive");
  }
  const double y_amb = std::sqrt(eps_amb.real());

  // running product in (E, H) tangential-field coordinates
  std::array<Complex, 4> m{1.0, 0.0, 0.0, 1.0};
  const double phase_scale =
      constants::two_pi * nu_thz * 1e12 / constants::speed_of_light;
  for (const auto& layer : stack.layers) {
    const Complex n = detail::refractive_index(evaluate(layer.model, nu_thz));
    const Complex delta = phase_scale * n * layer.thickness_m;
    const Complex cd = std::cos(delta);
    const Complex sd = std::sin(delta);
    const Complex i{0.0, 1.0};
    const std::array<Complex, 4> l{cd, -i * sd / n, -i * n * sd, cd};
    m = {m[0] * l[0] + m[1] * l[2], m[0] * l[1] + m[1] * l[3],
         m[2] * l[0] + m[3] * l[2], m[2] * l[1] + m[3] * l[3]};
  }

  const Complex b = m[0] + m[1] * y_amb;
  const Complex c = m[2] + m[3] * y_amb;
  const Complex denom = y_amb * b + c;
  const Complex t_amp = 2.0 * y_amb / denom;
  const Complex r_amp = (y_amb * b - c) / denom;

  TransmittanceResult out;
  out.transmittance = std::norm(t_amp);
  out.reflectance = std::norm(r_amp);
  return out;
}

}  // namespace landau
