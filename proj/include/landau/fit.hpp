// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "landau/coupling.hpp"
#include "landau/errors.hpp"
#include "landau/hopfield.hpp"
#include "landau/sample.hpp"

namespace landau {

struct PeakPoint {
  double field_tesla = 0.0;
  double freq_thz = 0.0;
  double weight = 1.0;
  std::string label;  // optional branch hint, empty = none
};

struct PeakDataset {
  std::vector<PeakPoint> points;
};

inline void validate(const PeakDataset& d) {
  if (d.points.empty()) {
    throw schema_error("PeakDataset: must contain at least one point");
  }
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    const auto& p = d.points[i];
    if (!std::isfinite(p.field_tesla) || !std::isfinite(p.freq_thz) ||
        !std::isfinite(p.weight) || p.weight < 0.0) {
      throw schema_error("PeakDataset: non-finite value or negative weight "
                         "at point " + std::to_string(i + 1));
    }
  }
}

/// One free parameter of the least-squares problem. Recognized names:
/// "g", "g_n" (one shared value for every MP mode), "g_<odd>" (individual
/// mode), "cavity_frequency", "effective_mass_ratio", "rel_permittivity".
struct FitParameter {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  double initial = 0.0;
};

struct FitProblem {
  SampleParams sample;
  CouplingSet couplings;
  std::vector<FitParameter> free_params;
  double freq_resolution_thz = 0.0;  // ambiguity window for assignment
  double tolerance_thz = 1e-6;
  std::size_t max_iterations = 2000;
};

inline void validate(const FitProblem& p) {
  if (p.free_params.empty()) {
    throw domain_error("FitProblem: at least one free parameter required");
  }
  for (const auto& fp : p.free_params) {
    if (!std::isfinite(fp.lower) || !std::isfinite(fp.upper) ||
        !(fp.lower < fp.upper)) {
      throw domain_error("FitProblem: bounds for '" + fp.name +
                         "' must be finite with lower < upper");
    }
    if (fp.initial < fp.lower || fp.initial > fp.upper) {
      throw domain_error("FitProblem: initial guess for '" + fp.name +
                         "' outside bounds");
    }
  }
}

/// Overlay a parameter vector onto the base sample/couplings.
inline void apply_parameters(const FitProblem& problem,
                             const std::vector<double>& x,
                             SampleParams& sample, CouplingSet& couplings) {
  sample = problem.sample;
  couplings = problem.couplings;
  for (std::size_t i = 0; i < problem.free_params.size(); ++i) {
    const std::string& name = problem.free_params[i].name;
    const double v = x[i];
    if (name == "g") {
      couplings.cr_coupling = Frequency{v};
    } else if (name == "g_n") {
      for (auto& [n, g] : couplings.mp_couplings) g = Frequency{v};
    } else if (name.rfind("g_", 0) == 0) {
      const int mode = std::stoi(name.substr(2));
      auto it = couplings.mp_couplings.find(mode);
      if (it == couplings.mp_couplings.end()) {
        throw domain_error("apply_parameters: no MP mode " + name);
      }
      it->second = Frequency{v};
    } else if (name == "cavity_frequency") {
      couplings.cavity_frequency = Frequency{v};
    } else if (name == "effective_mass_ratio") {
      sample.effective_mass_ratio = v;
    } else if (name == "rel_permittivity") {
      sample.rel_permittivity = v;
    } else {
      throw domain_error("apply_parameters: unknown parameter '" + name + "'");
    }
  }
}

struct BranchAssignment {
  std::size_t point_index = 0;
  std::size_t field_index = 0;
  std::size_t branch_index = 0;
  std::string label;
  double residual_thz = 0.0;  // peak minus branch
  bool ambiguous = false;
};

/// Match each peak to the nearest-frequency branch at the nearest field
/// point. A peak whose field lies more than one grid step from any sweep
/// point is an error. Equidistant branches resolve to the lower one; a
/// point whose two nearest branches differ in distance by no more than
/// twice the frequency resolution is flagged ambiguous.
inline std::vector<BranchAssignment> assign_branches(
    const PeakDataset& peaks, const PolaritonSpectrum& spectrum,
    double freq_resolution_thz = 0.0) {
  validate(peaks);
  if (spectrum.field_tesla.empty()) {
    throw domain_error("assign_branches: empty spectrum");
  }
  const auto& fields = spectrum.field_tesla;
  double max_step = 0.0;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    max_step = std::max(max_step, fields[i] - fields[i - 1]);
  }

  std::vector<BranchAssignment> out;
  out.reserve(peaks.points.size());
  for (std::size_t pi = 0; pi < peaks.points.size(); ++pi) {
    const auto& pt = peaks.points[pi];
    std::size_t fbest = 0;
    double fdist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const double d = std::abs(fields[i] - pt.field_tesla);
      if (d < fdist) {
        fdist = d;
        fbest = i;
      }
    }
    if (fields.size() > 1 && fdist > max_step) {
      throw domain_error(
          "assign_branches: point " + std::to_string(pi + 1) + " at B = " +
          std::to_string(pt.field_tesla) +
          " T lies outside the spectrum's field range");
    }
    const auto& branches = spectrum.branches[fbest];
    BranchAssignment a;
    a.point_index = pi;
    a.field_index = fbest;
    if (!pt.label.empty()) {
      bool found = false;
      for (std::size_t b = 0; b < branches.size(); ++b) {
        if (branches[b].label == pt.label) {
          a.branch_index = b;
          found = true;
          break;
        }
      }
      if (!found) {
        throw schema_error("assign_branches: label hint '" + pt.label +
                           "' for point " + std::to_string(pi + 1) +
                           " matches no branch");
      }
    } else {
      double d1 = std::numeric_limits<double>::infinity();
      double d2 = std::numeric_limits<double>::infinity();
      std::size_t best = 0;
      for (std::size_t b = 0; b < branches.size(); ++b) {
        const double d = std::abs(branches[b].frequency.thz - pt.freq_thz);
        if (d < d1) {
          d2 = d1;
          d1 = d;
          best = b;
        } else if (d < d2) {
          d2 = d;
        }
      }
      a.branch_index = best;
      a.ambiguous = (branches.size() > 1) &&
                    (d2 - d1 <= 2.0 * freq_resolution_thz);
    }
    a.label = branches[a.branch_index].label;
    a.residual_thz = pt.freq_thz - branches[a.branch_index].frequency.thz;
    out.push_back(std::move(a));
  }
  return out;
}

namespace detail {

inline std::vector<double> unique_sorted_fields(const PeakDataset& peaks) {
  std::vector<double> fields;
  fields.reserve(peaks.points.size());
  for (const auto& p : peaks.points) fields.push_back(p.field_tesla);
  std::sort(fields.begin(), fields.end());
  fields.erase(std::unique(fields.begin(), fields.end()), fields.end());
  return fields;
}

}  // namespace detail

/// Weighted sum of squared frequency residuals over the branch assignment,
/// recomputed at the given parameter vector. Eigensolver failures yield a
/// large penalty so the simplex can retreat.
inline double objective(const FitProblem& problem, const PeakDataset& peaks,
                        const std::vector<double>& x) {
  SampleParams sample;
  CouplingSet couplings;
  apply_parameters(problem, x, sample, couplings);
  try {
    const PolaritonSpectrum spec =
        polariton_sweep(couplings, sample, detail::unique_sorted_fields(peaks));
    const auto assignments =
        assign_branches(peaks, spec, problem.freq_resolution_thz);
    double total = 0.0;
    for (const auto& a : assignments) {
      const double w = peaks.points[a.point_index].weight;
      total += w * a.residual_thz * a.residual_thz;
    }
    return total;
  } catch (const numerical_error& e) {
    std::clog << "fit objective: eigensolver failure (" << e.what()
              << "); returning penalty\n";
    return 1e12;
  }
}

struct FitResult {
  std::map<std::string, double> best_params;
  double residual_rms_thz = 0.0;
  std::vector<double> per_point_residuals_thz;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Bounded Nelder-Mead simplex (reflection 1, expansion 2, contraction 0.5,
/// shrink 0.5; bound handling by projection onto the box). Converged when
/// the simplex spread in RMS-residual terms drops below tolerance_thz.
inline FitResult fit(const FitProblem& problem, const PeakDataset& peaks) {
  validate(problem);
  validate(peaks);

  const std::size_t n = problem.free_params.size();
  double weight_total = 0.0;
  for (const auto& p : peaks.points) weight_total += p.weight;
  const auto to_rms = [&](double f) {
    return weight_total > 0.0 ? std::sqrt(f / weight_total) : 0.0;
  };
  const auto project = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::clamp(x[i], problem.free_params[i].lower,
                        problem.free_params[i].upper);
    }
  };

  // initial simplex: guess plus one 5%-of-box step per coordinate
  std::vector<std::vector<double>> simplex(n + 1);
  std::vector<double> fval(n + 1);
  std::vector<double> x0(n);
  for (std::size_t i = 0; i < n; ++i) x0[i] = problem.free_params[i].initial;
  simplex[0] = x0;
  for (std::size_t v = 1; v <= n; ++v) {
    simplex[v] = x0;
    const auto& fp = problem.free_params[v - 1];
    const double h = 0.05 * (fp.upper - fp.lower);
    simplex[v][v - 1] += (simplex[v][v - 1] + h <= fp.upper) ? h : -h;
    project(simplex[v]);
  }
  for (std::size_t v = 0; v <= n; ++v) {
    fval[v] = objective(problem, peaks, simplex[v]);
  }

  std::size_t iter = 0;
  bool converged = false;
  for (; iter < problem.max_iterations; ++iter) {
    // order: best first
    std::vector<std::size_t> order(n + 1);
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return fval[a] < fval[b];
                     });
    {
      std::vector<std::vector<double>> s2(n + 1);
      std::vector<double> f2(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        s2[i] = simplex[order[i]];
        f2[i] = fval[order[i]];
      }
      simplex.swap(s2);
      fval.swap(f2);
    }
    if (to_rms(fval[n]) - to_rms(fval[0]) < problem.tolerance_thz) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v][i];
    }
    for (auto& c : centroid) c /= static_cast<double>(n);

    const auto blend = [&](double coeff) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = centroid[i] + coeff * (centroid[i] - simplex[n][i]);
      }
      project(x);
      return x;
    };

    std::vector<double> xr = blend(1.0);  // reflection
    const double fr = objective(problem, peaks, xr);
    if (fr < fval[0]) {
      std::vector<double> xe = blend(2.0);  // expansion
      const double fe = objective(problem, peaks, xe);
      if (fe < fr) {
        simplex[n] = std::move(xe);
        fval[n] = fe;
      } else {
        simplex[n] = std::move(xr);
        fval[n] = fr;
      }
    } else if (fr < fval[n - 1]) {
      simplex[n] = std::move(xr);
      fval[n] = fr;
    } else {
      const bool outside = fr < fval[n];
      std::vector<double> xc;
      if (outside) {
        xc.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
          xc[i] = centroid[i] + 0.5 * (xr[i] - centroid[i]);
        }
      } else {
        xc.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
          xc[i] = centroid[i] + 0.5 * (simplex[n][i] - centroid[i]);
        }
      }
      project(xc);
      const double fc = objective(problem, peaks, xc);
      if (fc < (outside ? fr : fval[n])) {
        simplex[n] = std::move(xc);
        fval[n] = fc;
      } else {
        // shrink toward the best vertex
        for (std::size_t v = 1; v <= n; ++v) {
          for (std::size_t i = 0; i < n; ++i) {
            simplex[v][i] =
                simplex[0][i] + 0.5 * (simplex[v][i] - simplex[0][i]);
          }
          project(simplex[v]);
          fval[v] = objective(problem, peaks, simplex[v]);
        }
      }
    }
  }

  // best vertex
  std::size_t best = 0;
  for (std::size_t v = 1; v <= n; ++v) {
    if (fval[v] < fval[best]) best = v;
  }

  FitResult result;
  result.iterations = iter;
  result.converged = converged;
  for (std::size_t i = 0; i < n; ++i) {
    result.best_params[problem.free_params[i].name] = simplex[best][i];
  }
  result.residual_rms_thz = to_rms(fval[best]);

  SampleParams sample;
  CouplingSet couplings;
  apply_parameters(problem, simplex[best], sample, couplings);
  const PolaritonSpectrum spec =
      polariton_sweep(couplings, sample, detail::unique_sorted_fields(peaks));
  const auto assignments =
      assign_branches(peaks, spec, problem.freq_resolution_thz);
  result.per_point_residuals_thz.resize(peaks.points.size(), 0.0);
  for (const auto& a : assignments) {
    result.per_point_residuals_thz[a.point_index] = a.residual_thz;
  }
  return result;
}

/// Deterministic synthetic peak generation: every positive branch at every
/// field, frequencies perturbed by seeded Gaussian noise of relative size
/// noise_frac. The Gaussian is a fixed Box-Muller over mt19937_64 output,
/// so results are identical across platforms for a given seed.
inline PeakDataset synthetic_peaks(const CouplingSet& c, const SampleParams& s,
                                   const std::vector<double>& fields,
                                   double noise_frac, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto canonical = [&rng]() {
    // 53-bit uniform in (0, 1]
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  };
  const auto gaussian = [&]() {
    const double u1 = canonical();
    const double u2 = canonical();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * constants::pi * u2);
  };
  const PolaritonSpectrum spec = polariton_sweep(c, s, fields);
  PeakDataset out;
  for (std::size_t fi = 0; fi < fields.size(); ++fi) {
    for (const auto& br : spec.branches[fi]) {
      PeakPoint p;
      p.field_tesla = fields[fi];
      p.freq_thz = br.frequency.thz * (1.0 + noise_frac * gaussian());
      p.weight = 1.0;
      out.points.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace landau
