// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "landau/coupling.hpp"
#include "landau/dispersion.hpp"
#include "landau/eigensolver.hpp"
#include "landau/errors.hpp"
#include "landau/matrix.hpp"
#include "landau/sample.hpp"
#include "landau/units.hpp"

namespace landau {

/// Bogoliubov eigenproblem matrix for the CR-active polariton set, in the
/// operator basis (a_+, a_-^dag, b, c_1, c_3, ...). Entries are ordinary
/// frequencies in THz. The matrix is not Hermitian but eta-pseudo-Hermitian
/// with eta = diag(1, -1, 1, ..., 1).
struct HopfieldMatrix {
  ComplexMatrix entries;
  double field_tesla = 0.0;
  std::vector<int> mode_indices;

  std::size_t dimension() const { return entries.rows(); }
};

namespace detail {

inline HopfieldMatrix assemble(const CouplingSet& c, double b_tesla,
                               const SampleParams& s, bool cr_active) {
  validate(c);
  const double nu0 = c.cavity_frequency.thz;
  const EffectiveCouplings eff = effective_couplings(c, b_tesla, s);
  const double d = diamagnetic_coefficient(c).thz;

  const std::vector<int> modes = c.mode_indices();
  const std::size_t n = 3 + modes.size();
  ComplexMatrix m(n, n);

  // The photon block and photon-row couplings are shared by the CR-active
  // set (a_+, a_-^dag, b, c_n) and its conjugate (a_-, a_+^dag, b^dag,
  // c_n^dag); the matter rows flip sign in the conjugate set, so that
  // spectrum(conjugate) = -conj(spectrum(active)).
  const double sg = cr_active ? 1.0 : -1.0;
  const Complex I{0.0, 1.0};

  m(0, 0) = nu0 + d;
  m(0, 1) = -d;
  m(1, 0) = d;
  m(1, 1) = -nu0 - d;

  auto matter_row = [&](std::size_t row, double bare, double gbar) {
    m(0, row) = I * gbar;
    m(1, row) = I * gbar;
    m(row, 0) = -sg * I * gbar;
    m(row, 1) = sg * I * gbar;
    m(row, row) = sg * bare;
  };

  matter_row(2, cyclotron_frequency(b_tesla, s).thz, eff.gbar.thz);
  for (std::size_t j = 0; j < modes.size(); ++j) {
    const int mode = modes[j];
    const double k = slot_momentum(mode, s.slot_width);
    const double bare = magnetoplasmon_frequency(k, b_tesla, s).thz;
    matter_row(3 + j, bare, eff.gbar_n.at(mode).thz);
  }

  HopfieldMatrix out;
  out.entries = std::move(m);
  out.field_tesla = b_tesla;
  out.mode_indices = modes;
  return out;
}

}  // namespace detail

/// CR-active Bogoliubov matrix of the multimode Hamiltonian.
inline HopfieldMatrix build_matrix(const CouplingSet& c, double b_tesla,
                                   const SampleParams& s) {
  return detail::assemble(c, b_tesla, s, /*cr_active=*/true);
}

/// Matrix for the conjugate (CR-inactive) operator set
/// (a_-, a_+^dag, b^dag, c_n^dag). Its spectrum is {-conj(lambda)} of the
/// CR-active one; used for pairing tests, not for branch output.
inline HopfieldMatrix build_conjugate_matrix(const CouplingSet& c,
                                             double b_tesla,
                                             const SampleParams& s) {
  return detail::assemble(c, b_tesla, s, /*cr_active=*/false);
}

/// One polariton branch at one field point. Coefficients follow the
/// Bogoliubov transformation p = w a_+ + y a_-^dag + x b + sum_n x_n c_n,
/// normalized to |w|^2 - |y|^2 + |x|^2 + sum|x_n|^2 = 1.
struct BranchRecord {
  std::string label;
  Frequency frequency{};
  Complex w{};
  Complex y{};
  Complex x{};
  std::vector<Complex> x_n;

  double photon_weight() const { return std::norm(w); }
  double bogoliubov_norm() const {
    double s = std::norm(w) - std::norm(y) + std::norm(x);
    for (const auto& c : x_n) s += std::norm(c);
    return s;
  }
};

struct PolaritonSpectrum {
  std::vector<double> field_tesla;
  std::vector<int> mode_indices;
  std::vector<std::vector<BranchRecord>> branches;  // per field, ascending

  std::size_t branch_count() const {
    return branches.empty() ? 0 : branches.front().size();
  }
};

namespace detail {

// eta-normalize an eigenvector of the CR-active matrix; positive branches
// must carry eta-norm +1.
inline BranchRecord make_branch(const Eigenpair& p,
                                const std::vector<int>& modes) {
  double s = std::norm(p.vector[0]) - std::norm(p.vector[1]);
  for (std::size_t i = 2; i < p.vector.size(); ++i) s += std::norm(p.vector[i]);
  if (!(s > 0.0)) {
    throw numerical_error(
        "polariton branch with non-positive Bogoliubov norm", s);
  }
  const double scale = 1.0 / std::sqrt(s);
  std::vector<Complex> v = p.vector;
  // fix the arbitrary global phase: largest component made real positive
  std::size_t imax = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  }
  const Complex phase = std::abs(v[imax]) > 0.0
                            ? std::conj(v[imax]) / std::abs(v[imax])
                            : Complex{1.0, 0.0};
  for (auto& z : v) z *= phase * scale;

  BranchRecord rec;
  rec.frequency = Frequency{p.value.real()};
  rec.w = v[0];
  rec.y = v[1];
  rec.x = v[2];
  rec.x_n.assign(v.begin() + 3, v.end());
  (void)modes;
  return rec;
}

inline std::string branch_label(std::size_t idx) {
  return idx == 0 ? std::string("LP") : "UP" + std::to_string(idx);
}

}  // namespace detail

/// Positive-frequency branches of the CR-active matrix at one field,
/// ascending in frequency. The selection threshold is +1e-9 * nu_0 to keep
/// near-zero eigenvalues from flapping in sign.
inline std::vector<BranchRecord> polariton_branches(const CouplingSet& c,
                                                    double b_tesla,
                                                    const SampleParams& s,
                                                    double tol = 1e-12) {
  const HopfieldMatrix m = build_matrix(c, b_tesla, s);
  const std::vector<Eigenpair> eig = eigendecompose(m.entries, tol);
  const double threshold = 1e-9 * c.cavity_frequency.thz;
  std::vector<BranchRecord> out;
  for (const auto& p : eig) {
    if (p.value.real() > threshold) {
      out.push_back(detail::make_branch(p, m.mode_indices));
    }
  }
  const std::size_t expected = 1 + 1 + c.mp_couplings.size();
  if (out.size() != expected) {
    throw numerical_error(
        "polariton_branches: expected " + std::to_string(expected) +
            " positive branches, got " + std::to_string(out.size()) +
            " at B = " + std::to_string(b_tesla) + " T",
        0.0);
  }
  // eigendecompose returns ascending real parts already
  return out;
}

/// Diagonalize across a field sweep and label branches by continuity:
/// nearest-frequency matching to the previous field point, ties broken
/// toward preserving the existing order; the first point is labeled by
/// sort order (LP, UP1, UP2, ...).
inline PolaritonSpectrum polariton_sweep(const CouplingSet& c,
                                         const SampleParams& s,
                                         const std::vector<double>& fields,
                                         double tol = 1e-12) {
  if (fields.empty()) {
    throw domain_error("polariton_sweep: field list must be non-empty");
  }
  for (std::size_t i = 1; i < fields.size(); ++i) {
    if (!(fields[i] > fields[i - 1])) {
      throw domain_error("polariton_sweep: fields must be ascending");
    }
  }
  PolaritonSpectrum spec;
  spec.field_tesla = fields;
  spec.mode_indices = c.mode_indices();
  spec.branches.reserve(fields.size());

  std::vector<double> prev_freq;
  std::vector<std::string> prev_label;
  for (double b : fields) {
    std::vector<BranchRecord> recs = polariton_branches(c, b, s, tol);
    if (prev_freq.empty()) {
      for (std::size_t i = 0; i < recs.size(); ++i) {
        recs[i].label = detail::branch_label(i);
      }
    } else {
      // continuity: greedily pair (branch, previous-branch) by |dfreq|,
      // each previous label used once; equal distances resolve in order,
      // which preserves the ascending labeling.
      const std::size_t n = recs.size();
      std::vector<bool> used(n, false);
      std::vector<std::size_t> match(n, 0);
      struct Cand {
        double dist;
        std::size_t cur, prev;
      };
      std::vector<Cand> cands;
      cands.reserve(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          cands.push_back({std::abs(recs[i].frequency.thz - prev_freq[j]), i, j});
        }
      }
      std::stable_sort(cands.begin(), cands.end(),
                       [](const Cand& a, const Cand& b) {
                         if (a.dist != b.dist) return a.dist < b.dist;
                         if (a.cur != b.cur) return a.cur < b.cur;
                         return a.prev < b.prev;
                       });
      std::vector<bool> cur_done(n, false);
      std::size_t assigned = 0;
      for (const Cand& cd : cands) {
        if (cur_done[cd.cur] || used[cd.prev]) continue;
        match[cd.cur] = cd.prev;
        cur_done[cd.cur] = true;
        used[cd.prev] = true;
        if (++assigned == n) break;
      }
      for (std::size_t i = 0; i < n; ++i) recs[i].label = prev_label[match[i]];
    }
    prev_freq.clear();
    prev_label.clear();
    for (const auto& r : recs) {
      prev_freq.push_back(r.frequency.thz);
      prev_label.push_back(r.label);
    }
    spec.branches.push_back(std::move(recs));
  }
  return spec;
}

}  // namespace landau
