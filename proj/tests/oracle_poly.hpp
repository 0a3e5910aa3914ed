// SPDX-License-Identifier: Apache-2.0
//
// Test-only eigenvalue oracle, independent of the production QR path:
// characteristic-polynomial coefficients by Faddeev-LeVerrier, roots by
// Aberth-Ehrlich simultaneous iteration. Everything runs in long double
// so the double-precision comparison has headroom.
#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <vector>

#include "landau/matrix.hpp"

namespace testutil {

using CL = std::complex<long double>;

/// Coefficients of det(zI - A), highest power first (monic).
inline std::vector<CL> characteristic_polynomial(
    const landau::ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<CL> aw(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      aw[i * n + j] = CL(a(i, j).real(), a(i, j).imag());
    }
  }
  std::vector<CL> coeff(n + 1);
  coeff[0] = 1.0L;
  std::vector<CL> m(n * n, CL{0.0L, 0.0L});  // M_0 = 0
  std::vector<CL> tmp(n * n);
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{k-1} I
    std::fill(tmp.begin(), tmp.end(), CL{0.0L, 0.0L});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        const CL v = aw[i * n + l];
        if (v == CL{0.0L, 0.0L}) continue;
        for (std::size_t j = 0; j < n; ++j) {
          tmp[i * n + j] += v * m[l * n + j];
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) tmp[i * n + i] += coeff[k - 1];
    m.swap(tmp);
    // c_k = -trace(A M_k)/k
    CL tr{0.0L, 0.0L};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        tr += aw[i * n + l] * m[l * n + i];
      }
    }
    coeff[k] = -tr / static_cast<long double>(k);
  }
  return coeff;
}

inline CL horner(const std::vector<CL>& c, CL z) {
  CL acc{0.0L, 0.0L};
  for (const CL& ck : c) acc = acc * z + ck;
  return acc;
}

/// All roots of a monic polynomial by Aberth-Ehrlich iteration.
inline std::vector<std::complex<double>> polynomial_roots(
    const std::vector<CL>& coeff) {
  const std::size_t deg = coeff.size() - 1;
  std::vector<CL> dcoeff(deg);
  for (std::size_t i = 0; i < deg; ++i) {
    dcoeff[i] = coeff[i] * static_cast<long double>(deg - i);
  }
  // Cauchy-style bound on root magnitudes for the starting circle
  long double bound = 0.0L;
  for (std::size_t i = 1; i <= deg; ++i) {
    bound = std::max(bound, std::abs(coeff[i]));
  }
  bound += 1.0L;
  std::vector<CL> z(deg);
  for (std::size_t i = 0; i < deg; ++i) {
    const long double angle =
        2.0L * 3.14159265358979323846L * (static_cast<long double>(i) + 0.376L) /
        static_cast<long double>(deg);
    z[i] = CL(0.7L * bound * std::cos(angle), 0.7L * bound * std::sin(angle));
  }
  for (int iter = 0; iter < 500; ++iter) {
    long double worst = 0.0L;
    for (std::size_t i = 0; i < deg; ++i) {
      const CL p = horner(coeff, z[i]);
      const CL dp = horner(dcoeff, z[i]);
      if (dp == CL{0.0L, 0.0L}) continue;
      const CL w = p / dp;
      CL rep{0.0L, 0.0L};
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != i) rep += CL{1.0L, 0.0L} / (z[i] - z[j]);
      }
      const CL dz = w / (CL{1.0L, 0.0L} - w * rep);
      z[i] -= dz;
      worst = std::max(worst, std::abs(dz));
    }
    long double scale = 0.0L;
    for (const CL& r : z) scale = std::max(scale, std::abs(r));
    if (worst <= 1e-20L * std::max(scale, 1.0L)) break;
  }
  std::vector<std::complex<double>> out(deg);
  for (std::size_t i = 0; i < deg; ++i) {
    out[i] = std::complex<double>(static_cast<double>(z[i].real()),
                                  static_cast<double>(z[i].imag()));
  }
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

inline std::vector<std::complex<double>> eigenvalue_oracle(
    const landau::ComplexMatrix& a) {
  return polynomial_roots(characteristic_polynomial(a));
}

}  // namespace testutil
