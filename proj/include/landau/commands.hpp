// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "landau/config.hpp"
#include "landau/dispersion.hpp"
#include "landau/errors.hpp"
#include "landau/fit.hpp"
#include "landau/hopfield.hpp"
#include "landau/io.hpp"
#include "landau/peaks.hpp"
#include "landau/transmission.hpp"

namespace landau {

struct ZeroDetuneRow {
  std::string mode;              // "CR", "MP1", "MP3", ...
  double k_per_m = 0.0;
  std::optional<double> field_tesla;    // empty when no solution exists
  std::optional<double> min_freq_thz;   // minimum attainable, on no-solution
};

/// Zero-detuning fields of CR and each configured MP mode against the bare
/// cavity frequency. Modes without a real solution are reported, not fatal.
inline std::vector<ZeroDetuneRow> cmd_zerodetune(const Config& cfg) {
  const SampleParams s = cfg.sample_params();
  validate(s);
  const Frequency target{cfg.frequency_thz};
  std::vector<ZeroDetuneRow> rows;

  ZeroDetuneRow cr;
  cr.mode = "CR";
  cr.k_per_m = 0.0;
  cr.field_tesla = zero_detuning_field(target, 0.0, s);
  rows.push_back(cr);

  for (int n : cfg.mp_modes) {
    ZeroDetuneRow row;
    row.mode = "MP" + std::to_string(n);
    row.k_per_m = slot_momentum(n, s.slot_width);
    try {
      row.field_tesla = zero_detuning_field(target, row.k_per_m, s);
    } catch (const no_solution_error& e) {
      row.min_freq_thz = e.min_frequency_thz();
    }
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

inline std::filesystem::path prepare_out_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::filesystem::create_directories(p);
  return p;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw error("cannot open output file '" + path.string() + "'");
  }
  return os;
}

}  // namespace detail

inline void write_zerodetune_csv(std::ostream& os,
                                 const std::vector<ZeroDetuneRow>& rows,
                                 const Config& cfg) {
  detail::write_echo_header(os, cfg);
  os << "mode,k_per_m,B_zero_T,status,min_freq_THz\n";
  using detail::format_double;
  for (const auto& r : rows) {
    os << r.mode << ',' << format_double(r.k_per_m) << ',';
    if (r.field_tesla) {
      os << format_double(*r.field_tesla) << ",ok,";
    } else {
      os << "nan,no_solution," << format_double(*r.min_freq_thz);
    }
    os << "\n";
  }
}

/// Bare dispersion curves: matter modes vs B, and the plasmon/MP dispersion
/// vs k at the zero-detuning fields that exist.
inline void cmd_dispersion(const Config& cfg, const std::string& out_dir) {
  const SampleParams s = cfg.sample_params();
  validate(s);
  const auto dir = detail::prepare_out_dir(out_dir);
  using detail::format_double;

  {
    auto os = detail::open_out(dir / "dispersion_vs_b.csv");
    detail::write_echo_header(os, cfg);
    os << "B_T,nu_c_THz";
    for (int n : cfg.mp_modes) os << ",nu_MP" << n << "_THz";
    os << ",nu0_THz\n";
    for (double b : cfg.field_axis()) {
      os << format_double(b) << ','
         << format_double(cyclotron_frequency(b, s).thz);
      for (int n : cfg.mp_modes) {
        const double k = slot_momentum(n, s.slot_width);
        os << ',' << format_double(magnetoplasmon_frequency(k, b, s).thz);
      }
      os << ',' << format_double(cfg.frequency_thz) << "\n";
    }
  }
  {
    auto os = detail::open_out(dir / "plasmon_vs_k.csv");
    detail::write_echo_header(os, cfg);
    const auto rows = cmd_zerodetune(cfg);
    os << "k_per_m,nu_p_THz";
    for (const auto& r : rows) {
      if (r.field_tesla) {
        os << ",nu_MP_THz_at_" << r.mode;
      }
    }
    os << "\n";
    const int n_max = cfg.mp_modes.empty() ? 3 : cfg.mp_modes.back();
    const double k_max =
        1.2 * slot_momentum(n_max, s.slot_width);
    const int npts = 200;
    for (int i = 0; i <= npts; ++i) {
      const double k = k_max * i / npts;
      os << format_double(k) << ','
         << format_double(plasmon_frequency(k, s).thz);
      for (const auto& r : rows) {
        if (r.field_tesla) {
          os << ','
             << format_double(
                    magnetoplasmon_frequency(k, *r.field_tesla, s).thz);
        }
      }
      os << "\n";
    }
  }
}

/// Hopfield branch sweep over the configured field axis, written as CSV.
inline PolaritonSpectrum cmd_polaritons(const Config& cfg,
                                        const std::string& out_dir = {}) {
  const SampleParams s = cfg.sample_params();
  validate(s);
  const CouplingSet c = cfg.coupling_set();
  PolaritonSpectrum spec = polariton_sweep(c, s, cfg.field_axis());
  if (!out_dir.empty()) {
    const auto dir = detail::prepare_out_dir(out_dir);
    auto os = detail::open_out(dir / "polaritons.csv");
    write_spectrum_csv(os, spec, cfg);
  }
  return spec;
}

struct TransmissionOutput {
  TransmissionMap map;
  std::vector<Peak> peaks;  // filled when with_peaks
};

inline TransmissionOutput cmd_transmission(const Config& cfg, Polarization pol,
                                           bool passive, bool with_peaks,
                                           const std::string& out_dir = {},
                                           double peak_prominence = 0.05,
                                           std::size_t max_peaks = 8) {
  const SampleParams s = cfg.sample_params();
  validate(s);
  const CouplingSet c = cfg.coupling_set();
  TransmissionOutput out;
  out.map = transmission_map(cfg.stack_geometry(), s, c, cfg.field_axis(),
                             cfg.freq_axis(), pol, passive);
  if (with_peaks) {
    out.peaks = extract_peaks(out.map, peak_prominence, max_peaks);
  }
  if (!out_dir.empty()) {
    const auto dir = detail::prepare_out_dir(out_dir);
    {
      auto os = detail::open_out(dir / "transmission_long.csv");
      write_map_long_csv(os, out.map, cfg);
    }
    {
      auto os = detail::open_out(dir / "transmission_matrix.csv");
      write_map_matrix_csv(os, out.map, cfg);
    }
    if (with_peaks) {
      auto os = detail::open_out(dir / "transmission_peaks.csv");
      write_peaks_csv(os, out.peaks, cfg);
    }
  }
  return out;
}

/// Resolve the configured free parameters into bounded fit parameters.
/// Defaults: couplings in [0, 0.5 nu0] starting from the configured values;
/// cavity frequency within +-50%; mass ratio in [0.02, 0.3]; eps_r in
/// [1, 30]. [fit] section keys <token>_lower/_upper/_init override.
inline std::vector<FitParameter> fit_parameters(const Config& cfg,
                                                bool shared_gn) {
  const CouplingSet c = cfg.coupling_set();
  const double nu0 = c.cavity_frequency.thz;

  std::vector<std::string> tokens;
  for (const auto& t : cfg.fit_free_params) {
    if (shared_gn && t.rfind("g_", 0) == 0 && t != "g_n") continue;
    tokens.push_back(t);
  }
  if (shared_gn &&
      std::find(tokens.begin(), tokens.end(), "g_n") == tokens.end()) {
    tokens.push_back("g_n");
  }

  std::vector<FitParameter> out;
  for (const auto& t : tokens) {
    FitParameter p;
    p.name = t;
    if (t == "g") {
      p.lower = 0.0;
      p.upper = 0.5 * nu0;
      p.initial = c.cr_coupling.thz;
    } else if (t == "g_n") {
      p.lower = 0.0;
      p.upper = 0.5 * nu0;
      double mean = 0.0;
      for (const auto& [n, g] : c.mp_couplings) mean += g.thz;
      p.initial = c.mp_couplings.empty()
                      ? 0.0
                      : mean / static_cast<double>(c.mp_couplings.size());
    } else if (t.rfind("g_", 0) == 0) {
      const int mode = std::stoi(t.substr(2));
      auto it = c.mp_couplings.find(mode);
      if (it == c.mp_couplings.end()) {
        throw config_error("free_params: " + t +
                           " refers to a mode not in mp_modes");
      }
      p.lower = 0.0;
      p.upper = 0.5 * nu0;
      p.initial = it->second.thz;
    } else if (t == "cavity_frequency") {
      p.lower = 0.5 * nu0;
      p.upper = 1.5 * nu0;
      p.initial = nu0;
    } else if (t == "effective_mass_ratio") {
      p.lower = 0.02;
      p.upper = 0.3;
      p.initial = cfg.effective_mass_ratio;
    } else if (t == "rel_permittivity") {
      p.lower = 1.0;
      p.upper = 30.0;
      p.initial = cfg.rel_permittivity;
    }
    if (auto it = cfg.fit_lower.find(t); it != cfg.fit_lower.end()) {
      p.lower = it->second;
    }
    if (auto it = cfg.fit_upper.find(t); it != cfg.fit_upper.end()) {
      p.upper = it->second;
    }
    if (auto it = cfg.fit_initial.find(t); it != cfg.fit_initial.end()) {
      p.initial = it->second;
    }
    out.push_back(std::move(p));
  }
  return out;
}

struct FitCommandOptions {
  bool shared_gn = false;
  std::optional<std::uint64_t> synthetic_seed;
  std::optional<double> noise_frac;  // defaults to [fit] noise_frac
};

struct FitCommandResult {
  FitResult result;
  PeakDataset peaks;  // the dataset actually fitted
};

inline FitCommandResult cmd_fit(const Config& cfg, PeakDataset peaks,
                                const FitCommandOptions& opts,
                                const std::string& out_dir = {}) {
  const SampleParams s = cfg.sample_params();
  validate(s);

  FitProblem problem;
  problem.sample = s;
  problem.couplings = cfg.coupling_set();
  problem.free_params = fit_parameters(cfg, opts.shared_gn);
  problem.freq_resolution_thz = cfg.freq_step_thz();
  problem.tolerance_thz = cfg.fit_tolerance_thz;
  problem.max_iterations = static_cast<std::size_t>(cfg.fit_max_iterations);

  // peaks must lie within one field-grid step of the sweep
  const auto axis = cfg.field_axis();
  const double step =
      axis.size() > 1 ? axis[1] - axis[0] : std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < peaks.points.size(); ++i) {
    const double b = peaks.points[i].field_tesla;
    if (b < axis.front() - step || b > axis.back() + step) {
      throw schema_error("peaks: row " + std::to_string(i + 1) + " at B = " +
                         detail::format_double(b) +
                         " T lies outside the configured sweep");
    }
  }

  FitCommandResult out;
  out.result = fit(problem, peaks);
  out.peaks = std::move(peaks);
  if (!out_dir.empty()) {
    const auto dir = detail::prepare_out_dir(out_dir);
    auto os = detail::open_out(dir / "fit_result.csv");
    write_fit_csv(os, out.result, cfg);
  }
  return out;
}

/// Self-test mode: generate peaks from the configured couplings plus seeded
/// noise, then fit them.
inline FitCommandResult cmd_fit_synthetic(const Config& cfg,
                                          const FitCommandOptions& opts,
                                          const std::string& out_dir = {}) {
  const SampleParams s = cfg.sample_params();
  validate(s);
  const double noise = opts.noise_frac.value_or(cfg.fit_noise_frac);
  PeakDataset peaks = synthetic_peaks(cfg.coupling_set(), s, cfg.field_axis(),
                                      noise, opts.synthetic_seed.value_or(0));
  if (!out_dir.empty()) {
    const auto dir = detail::prepare_out_dir(out_dir);
    auto os = detail::open_out(dir / "fit_synthetic_peaks.csv");
    detail::write_echo_header(os, cfg);
    os << "B_T,freq_THz,weight\n";
    using detail::format_double;
    for (const auto& p : peaks.points) {
      os << format_double(p.field_tesla) << ',' << format_double(p.freq_thz)
         << ',' << format_double(p.weight) << "\n";
    }
  }
  return cmd_fit(cfg, std::move(peaks), opts, out_dir);
}

inline void print_fit_summary(std::ostream& os, const FitResult& r,
                              const Config& cfg) {
  os << "fit " << (r.converged ? "converged" : "did NOT converge") << " after "
     << r.iterations << " iterations\n";
  const double nu0 = cfg.frequency_thz;
  for (const auto& [name, v] : r.best_params) {
    os << "  " << name << " = " << detail::format_double(v);
    if (name == "g" || name == "g_n" || name.rfind("g_", 0) == 0) {
      os << " THz  (" << name << "/nu0 = " << detail::format_double(v / nu0)
         << ")";
    }
    os << "\n";
  }
  os << "  residual RMS = " << detail::format_double(r.residual_rms_thz)
     << " THz over " << r.per_point_residuals_thz.size() << " points\n";
}

}  // namespace landau
