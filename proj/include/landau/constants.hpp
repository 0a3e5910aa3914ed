// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace landau {

// CODATA 2018. Fixed at build time; not configurable.
namespace constants {

inline constexpr double elementary_charge = 1.602176634e-19;     // C (exact)
inline constexpr double electron_mass = 9.1093837015e-31;        // kg
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double speed_of_light = 2.99792458e8;           // m/s (exact)
inline constexpr double reduced_planck = 1.054571817e-34;        // J*s

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace constants
}  // namespace landau
