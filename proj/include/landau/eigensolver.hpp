// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "landau/errors.hpp"
#include "landau/matrix.hpp"

namespace landau {

struct Eigenpair {
  Complex value;
  std::vector<Complex> vector;  // unit 2-norm
};

namespace detail {

// Unitary plane rotation G = [[c, s], [-conj(s), c]] with real c >= 0 such
// that G * (f, g)^T = (r, 0)^T. LAPACK zlartg-style construction.
struct GivensRotation {
  double c = 1.0;
  Complex s{0.0, 0.0};
  Complex r{0.0, 0.0};
};

inline GivensRotation make_givens(Complex f, Complex g) {
  GivensRotation out;
  const double af = std::abs(f);
  const double ag = std::abs(g);
  if (ag == 0.0) {
    out.c = 1.0;
    out.s = 0.0;
    out.r = f;
    return out;
  }
  if (af == 0.0) {
    out.c = 0.0;
    out.s = std::conj(g) / ag;
    out.r = ag;
    return out;
  }
  const double d = std::hypot(af, ag);
  const Complex phase = f / af;
  out.c = af / d;
  out.s = phase * std::conj(g) / d;
  out.r = phase * d;
  return out;
}

// Householder reduction to upper Hessenberg form, accumulating the unitary
// transform: A = Q H Q^H.
inline void hessenberg_reduce(ComplexMatrix& h, ComplexMatrix& q) {
  const std::size_t n = h.rows();
  q = ComplexMatrix::identity(n);
  if (n < 3) return;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    // Householder vector annihilating h(k+2..n-1, k).
    double xnorm = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm += std::norm(h(i, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;
    const Complex x0 = h(k + 1, k);
    const double ax0 = std::abs(x0);
    const Complex phase = (ax0 == 0.0) ? Complex{1.0, 0.0} : x0 / ax0;
    const Complex alpha = -phase * xnorm;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = h(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    // H <- P H with P = I - beta v v^H (rows k+1..n-1)
    for (std::size_t j = k; j < n; ++j) {
      Complex dot{0.0, 0.0};
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
      dot *= beta;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= dot * v[i];
    }
    // H <- H P (columns k+1..n-1)
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot{0.0, 0.0};
      for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
    }
    // Q <- Q P
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot{0.0, 0.0};
      for (std::size_t j = k + 1; j < n; ++j) dot += q(i, j) * v[j];
      dot *= beta;
      for (std::size_t j = k + 1; j < n; ++j) q(i, j) -= dot * std::conj(v[j]);
    }
    h(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// Wilkinson shift from the trailing 2x2 of the active block.
inline Complex wilkinson_shift(const ComplexMatrix& h, std::size_t m) {
  const Complex a = h(m - 1, m - 1), b = h(m - 1, m), c = h(m, m - 1),
                d = h(m, m);
  const Complex tr = a + d;
  const Complex det = a * d - b * c;
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  const Complex l1 = 0.5 * (tr + disc);
  const Complex l2 = 0.5 * (tr - disc);
  return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

// Explicit single-shift QR sweep on the Hessenberg block [lo, hi]:
// H - sI = QR, then H <- RQ + sI, accumulating the Schur basis in z.
inline void qr_sweep(ComplexMatrix& h, ComplexMatrix& z, std::size_t lo,
                     std::size_t hi, Complex shift) {
  const std::size_t n = h.rows();
  for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= shift;
  std::vector<GivensRotation> rots(hi - lo);
  for (std::size_t k = lo; k < hi; ++k) {
    GivensRotation g = make_givens(h(k, k), h(k + 1, k));
    rots[k - lo] = g;
    h(k, k) = g.r;
    h(k + 1, k) = 0.0;
    for (std::size_t j = k + 1; j < n; ++j) {
      const Complex a = h(k, j);
      const Complex b = h(k + 1, j);
      h(k, j) = g.c * a + g.s * b;
      h(k + 1, j) = -std::conj(g.s) * a + g.c * b;
    }
  }
  // right-multiply by G_lo^H ... G_{hi-1}^H
  for (std::size_t k = lo; k < hi; ++k) {
    const GivensRotation& g = rots[k - lo];
    const std::size_t top = std::min(k + 2, hi);
    for (std::size_t i = 0; i <= top; ++i) {
      const Complex a = h(i, k);
      const Complex b = h(i, k + 1);
      h(i, k) = g.c * a + std::conj(g.s) * b;
      h(i, k + 1) = -g.s * a + g.c * b;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Complex a = z(i, k);
      const Complex b = z(i, k + 1);
      z(i, k) = g.c * a + std::conj(g.s) * b;
      z(i, k + 1) = -g.s * a + g.c * b;
    }
  }
  for (std::size_t i = lo; i <= hi; ++i) h(i, i) += shift;
}

// Eigenvectors of the upper-triangular t by back substitution; small
// divisors are regularized LAPACK-ztrevc style.
inline std::vector<Complex> triangular_eigenvector(const ComplexMatrix& t,
                                                   std::size_t k,
                                                   double scale) {
  const std::size_t n = t.rows();
  const double smln = std::numeric_limits<double>::epsilon() * scale;
  std::vector<Complex> y(n, Complex{0.0, 0.0});
  y[k] = 1.0;
  const Complex lambda = t(k, k);
  for (std::size_t ii = k; ii-- > 0;) {
    Complex rhs{0.0, 0.0};
    for (std::size_t j = ii + 1; j <= k; ++j) rhs += t(ii, j) * y[j];
    Complex denom = t(ii, ii) - lambda;
    if (std::abs(denom) < smln) {
      denom = Complex{smln, 0.0};
    }
    y[ii] = -rhs / denom;
  }
  return y;
}

}  // namespace detail

/// Full eigendecomposition of a small dense complex matrix via Hessenberg
/// reduction and shifted QR iteration. Residuals ||A v - lambda v|| are
/// verified against tol * ||A||_F for every pair. Iteration budget is
/// 30 n^2 QR sweeps; exceeding it raises numerical_error with the size of
/// the stuck subdiagonal entry.
inline std::vector<Eigenpair> eigendecompose(const ComplexMatrix& a,
                                             double tol = 1e-12) {
  const std::size_t n = a.rows();
  if (n == 0 || a.cols() != n) {
    throw domain_error("eigendecompose: matrix must be square and nonempty");
  }
  const double anorm = a.frobenius_norm();
  if (anorm == 0.0) {
    std::vector<Eigenpair> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i].value = 0.0;
      out[i].vector.assign(n, Complex{0.0, 0.0});
      out[i].vector[i] = 1.0;
    }
    return out;
  }

  ComplexMatrix h = a;
  ComplexMatrix z;
  detail::hessenberg_reduce(h, z);

  const double ulp = std::numeric_limits<double>::epsilon();
  const std::size_t budget = 30 * n * n;
  std::size_t sweeps = 0;
  std::size_t hi = n - 1;
  std::size_t stalled = 0;
  const auto deflation_threshold = [&](std::size_t i) {
    const double local = std::abs(h(i - 1, i - 1)) + std::abs(h(i, i));
    return ulp * (local > 0.0 ? local : anorm);
  };
  while (hi > 0) {
    // deflate converged subdiagonals
    bool deflated = true;
    while (deflated && hi > 0) {
      deflated = false;
      if (std::abs(h(hi, hi - 1)) <= deflation_threshold(hi)) {
        h(hi, hi - 1) = 0.0;
        --hi;
        stalled = 0;
        deflated = true;
      }
    }
    if (hi == 0) break;
    // active block [lo, hi]
    std::size_t lo = hi;
    while (lo > 0) {
      if (std::abs(h(lo, lo - 1)) <= deflation_threshold(lo)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (++sweeps > budget) {
      throw numerical_error(
          "eigendecompose: QR iteration budget exhausted",
          std::abs(h(hi, hi - 1)) / anorm);
    }
    Complex shift = detail::wilkinson_shift(h, hi);
    if (++stalled % 12 == 0) {
      // exceptional shift to break rare symmetric stalls
      shift = h(hi, hi) + Complex{0.75 * std::abs(h(hi, hi - 1)), 0.0};
    }
    detail::qr_sweep(h, z, lo, hi, shift);
  }

  std::vector<Eigenpair> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k].value = h(k, k);
    std::vector<Complex> y = detail::triangular_eigenvector(h, k, anorm);
    std::vector<Complex> v(n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc{0.0, 0.0};
      for (std::size_t j = 0; j <= k; ++j) acc += z(i, j) * y[j];
      v[i] = acc;
    }
    const double vn = vector_norm(v);
    for (auto& c : v) c /= vn;
    out[k].vector = std::move(v);
  }

  // residual contract
  double worst = 0.0;
  for (const auto& p : out) {
    std::vector<Complex> r = a.multiply(p.vector);
    for (std::size_t i = 0; i < n; ++i) r[i] -= p.value * p.vector[i];
    worst = std::max(worst, vector_norm(r));
  }
  if (worst > tol * anorm) {
    throw numerical_error("eigendecompose: residual exceeds tolerance",
                          worst / anorm);
  }
  std::sort(out.begin(), out.end(), [](const Eigenpair& x, const Eigenpair& y) {
    return x.value.real() < y.value.real();
  });
  return out;
}

}  // namespace landau
