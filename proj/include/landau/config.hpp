// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "landau/coupling.hpp"
#include "landau/errors.hpp"
#include "landau/sample.hpp"
#include "landau/transmission.hpp"
#include "landau/units.hpp"

namespace landau {

/// Resolved run configuration. Values are stored in the units the config
/// file speaks (key names carry the unit), and converted to SI/THz through
/// the accessor methods, so an echoed config reloads to the identical
/// state.
struct Config {
  // [sample]
  double ne_per_cm2 = 3.6e11;
  double effective_mass_ratio = 0.076;
  double rel_permittivity = 6.98;
  double slot_width_um = 4.0;
  double qw_thickness_nm = 30.0;
  double cr_lifetime_ps = 51.9;  // tau = mu m*/e for the quoted mobility
  double mp_lifetime_ps = 1.2;
  std::map<int, double> mp_lifetime_ps_override;

  // [cavity]
  double frequency_thz = 0.925;
  double l_eff_um = 84.2;
  double gold_thickness_nm = 10.0;
  double gold_plasma_thz = 2180.0;
  double gold_scattering_thz = 6.45;
  double gaas_thickness_um = 22.35;
  double gaas_value = 3.6;
  bool gaas_value_is_index = false;

  // [couplings]
  bool normalized = false;
  double g = 0.0;
  std::vector<int> mp_modes;
  std::map<int, double> g_n;

  // [sweep]
  double b_min_t = 0.01;
  double b_max_t = 7.0;
  int b_points = 200;
  double freq_min_thz = 0.2;
  double freq_max_thz = 1.6;
  int freq_points = 400;

  // [fit]
  std::vector<std::string> fit_free_params{"g", "g_n"};
  int fit_max_iterations = 2000;
  double fit_tolerance_thz = 1e-6;
  double fit_noise_frac = 0.005;
  std::map<std::string, double> fit_lower;    // keyed by parameter token
  std::map<std::string, double> fit_upper;
  std::map<std::string, double> fit_initial;

  // [output]
  std::string output_directory = "out";

  SampleParams sample_params() const {
    SampleParams s;
    s.electron_density = ne_per_cm2 * 1e4;  // cm^-2 -> m^-2
    s.effective_mass_ratio = effective_mass_ratio;
    s.rel_permittivity = rel_permittivity;
    s.slot_width = slot_width_um * 1e-6;
    s.qw_thickness = qw_thickness_nm * 1e-9;
    s.cr_lifetime = cr_lifetime_ps * 1e-12;
    for (int n : mp_modes) {
      auto it = mp_lifetime_ps_override.find(n);
      const double ps = (it != mp_lifetime_ps_override.end()) ? it->second
                                                              : mp_lifetime_ps;
      s.mp_lifetimes[n] = ps * 1e-12;
    }
    return s;
  }

  /// Normalized couplings are converted to THz here, in one place.
  CouplingSet coupling_set() const {
    CouplingSet c;
    c.cavity_frequency = Frequency{frequency_thz};
    const double scale = normalized ? frequency_thz : 1.0;
    c.cr_coupling = Frequency{g * scale};
    for (int n : mp_modes) {
      auto it = g_n.find(n);
      const double v = (it != g_n.end()) ? it->second : 0.0;
      c.mp_couplings[n] = Frequency{v * scale};
    }
    return c;
  }

  StackGeometry stack_geometry() const {
    StackGeometry geom;
    geom.gold_thickness_m = gold_thickness_nm * 1e-9;
    geom.gold_plasma_thz = gold_plasma_thz;
    geom.gold_scattering_thz = gold_scattering_thz;
    geom.gaas_thickness_m = gaas_thickness_um * 1e-6;
    geom.gaas_value = gaas_value;
    geom.gaas_value_is_index = gaas_value_is_index;
    geom.effective_length_m = l_eff_um * 1e-6;
    return geom;
  }

  std::vector<double> field_axis() const {
    std::vector<double> out(static_cast<std::size_t>(b_points));
    for (int i = 0; i < b_points; ++i) {
      out[i] = b_points == 1 ? b_min_t
                             : b_min_t + (b_max_t - b_min_t) * i /
                                             static_cast<double>(b_points - 1);
    }
    return out;
  }

  std::vector<double> freq_axis() const {
    std::vector<double> out(static_cast<std::size_t>(freq_points));
    for (int i = 0; i < freq_points; ++i) {
      out[i] = freq_points == 1
                   ? freq_min_thz
                   : freq_min_thz + (freq_max_thz - freq_min_thz) * i /
                                        static_cast<double>(freq_points - 1);
    }
    return out;
  }

  double freq_step_thz() const {
    return freq_points > 1
               ? (freq_max_thz - freq_min_thz) / (freq_points - 1)
               : 0.0;
  }

  std::string echo() const;
};

namespace detail {

/// Shortest round-trip decimal representation (std::to_chars).
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_int_list(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(v[i]);
  }
  return out;
}

inline std::string format_string_list(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i];
  }
  return out;
}

}  // namespace detail

inline std::string Config::echo() const {
  using detail::format_double;
  std::ostringstream os;
  os << "[sample]\n";
  os << "ne_per_cm2 = " << format_double(ne_per_cm2) << "\n";
  os << "effective_mass_ratio = " << format_double(effective_mass_ratio) << "\n";
  os << "rel_permittivity = " << format_double(rel_permittivity) << "\n";
  os << "slot_width_um = " << format_double(slot_width_um) << "\n";
  os << "qw_thickness_nm = " << format_double(qw_thickness_nm) << "\n";
  os << "cr_lifetime_ps = " << format_double(cr_lifetime_ps) << "\n";
  os << "mp_lifetime_ps = " << format_double(mp_lifetime_ps) << "\n";
  for (const auto& [n, v] : mp_lifetime_ps_override) {
    os << "mp_lifetime_ps_" << n << " = " << format_double(v) << "\n";
  }
  os << "\n[cavity]\n";
  os << "frequency_thz = " << format_double(frequency_thz) << "\n";
  os << "l_eff_um = " << format_double(l_eff_um) << "\n";
  os << "gold_thickness_nm = " << format_double(gold_thickness_nm) << "\n";
  os << "gold_plasma_thz = " << format_double(gold_plasma_thz) << "\n";
  os << "gold_scattering_thz = " << format_double(gold_scattering_thz) << "\n";
  os << "gaas_thickness_um = " << format_double(gaas_thickness_um) << "\n";
  os << "gaas_value = " << format_double(gaas_value) << "\n";
  os << "gaas_value_is_index = " << (gaas_value_is_index ? "true" : "false")
     << "\n";
  os << "\n[couplings]\n";
  os << "normalized = " << (normalized ? "true" : "false") << "\n";
  os << "g = " << format_double(g) << "\n";
  os << "mp_modes = " << detail::format_int_list(mp_modes) << "\n";
  for (const auto& [n, v] : g_n) {
    os << "g_" << n << " = " << format_double(v) << "\n";
  }
  os << "\n[sweep]\n";
  os << "b_min_t = " << format_double(b_min_t) << "\n";
  os << "b_max_t = " << format_double(b_max_t) << "\n";
  os << "b_points = " << b_points << "\n";
  os << "freq_min_thz = " << format_double(freq_min_thz) << "\n";
  os << "freq_max_thz = " << format_double(freq_max_thz) << "\n";
  os << "freq_points = " << freq_points << "\n";
  os << "\n[fit]\n";
  os << "free_params = " << detail::format_string_list(fit_free_params) << "\n";
  os << "max_iterations = " << fit_max_iterations << "\n";
  os << "tolerance_thz = " << format_double(fit_tolerance_thz) << "\n";
  os << "noise_frac = " << format_double(fit_noise_frac) << "\n";
  for (const auto& [key, v] : fit_lower) {
    os << key << "_lower = " << format_double(v) << "\n";
  }
  for (const auto& [key, v] : fit_upper) {
    os << key << "_upper = " << format_double(v) << "\n";
  }
  for (const auto& [key, v] : fit_initial) {
    os << key << "_init = " << format_double(v) << "\n";
  }
  os << "\n[output]\n";
  os << "directory = " << output_directory << "\n";
  return os.str();
}

namespace detail {

struct ConfigParser {
  std::string source;
  int line_no = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw config_error(source + ":" + std::to_string(line_no) + ": " + msg);
  }

  double parse_double(std::string_view v, const std::string& key) const {
    const std::string tmp(v);
    char* end = nullptr;
    const double out = std::strtod(tmp.c_str(), &end);
    if (end != tmp.c_str() + tmp.size() || tmp.empty() ||
        !std::isfinite(out)) {
      fail("key '" + key + "': expected a finite number, got '" + tmp + "'");
    }
    return out;
  }

  int parse_int(std::string_view v, const std::string& key) const {
    const double d = parse_double(v, key);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d) {
      fail("key '" + key + "': expected an integer");
    }
    return i;
  }

  bool parse_bool(std::string_view v, const std::string& key) const {
    if (v == "true") return true;
    if (v == "false") return false;
    fail("key '" + key + "': expected true or false");
  }

  std::vector<int> parse_int_list(std::string_view v,
                                  const std::string& key) const {
    std::vector<int> out;
    std::string item;
    std::stringstream ss{std::string(v)};
    while (std::getline(ss, item, ',')) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b == std::string::npos) fail("key '" + key + "': empty list item");
      out.push_back(parse_int(item.substr(b, e - b + 1), key));
    }
    return out;
  }

  std::vector<std::string> parse_string_list(std::string_view v,
                                             const std::string& key) const {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss{std::string(v)};
    while (std::getline(ss, item, ',')) {
      const auto b = item.find_first_not_of(" \t");
      const auto e = item.find_last_not_of(" \t");
      if (b == std::string::npos) fail("key '" + key + "': empty list item");
      out.push_back(item.substr(b, e - b + 1));
    }
    return out;
  }
};

inline bool parse_indexed_key(std::string_view key, std::string_view prefix,
                              int& index) {
  if (key.size() <= prefix.size() || key.substr(0, prefix.size()) != prefix) {
    return false;
  }
  const std::string_view tail = key.substr(prefix.size());
  int v = 0;
  auto res = std::from_chars(tail.data(), tail.data() + tail.size(), v);
  if (res.ec != std::errc{} || res.ptr != tail.data() + tail.size()) {
    return false;
  }
  index = v;
  return true;
}

inline bool is_fit_param_token(const std::string& t) {
  if (t == "g" || t == "g_n" || t == "cavity_frequency" ||
      t == "effective_mass_ratio" || t == "rel_permittivity") {
    return true;
  }
  int idx = 0;
  return parse_indexed_key(t, "g_", idx) && idx > 0 && idx % 2 == 1;
}

}  // namespace detail

/// Parse a sectioned key-value configuration. Unknown sections and keys are
/// rejected with the offending location; all values are validated.
inline Config parse_config(std::string_view text, const std::string& source) {
  Config cfg;
  detail::ConfigParser p{source, 0};
  std::string section;
  std::set<std::string> seen;

  std::string line;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, line)) {
    ++p.line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t");
    std::string trimmed = line.substr(b, e - b + 1);

    if (trimmed.front() == '[') {
      if (trimmed.back() != ']') p.fail("unterminated section header");
      section = trimmed.substr(1, trimmed.size() - 2);
      if (section != "sample" && section != "cavity" &&
          section != "couplings" && section != "sweep" && section != "fit" &&
          section != "output") {
        p.fail("unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      p.fail("expected 'key = value' (no '=' found at column " +
             std::to_string(b + trimmed.size() + 1) + ")");
    }
    if (section.empty()) p.fail("key outside of any [section]");
    std::string key = trimmed.substr(0, eq);
    std::string value = trimmed.substr(eq + 1);
    const auto ke = key.find_last_not_of(" \t");
    key = key.substr(0, ke == std::string::npos ? 0 : ke + 1);
    const auto vb = value.find_first_not_of(" \t");
    value = (vb == std::string::npos) ? std::string() : value.substr(vb);
    if (key.empty()) p.fail("empty key before '='");
    if (!seen.insert(section + "/" + key).second) {
      p.fail("duplicate key '" + key + "' in [" + section + "]");
    }

    int idx = 0;
    if (section == "sample") {
      if (key == "ne_per_cm2") cfg.ne_per_cm2 = p.parse_double(value, key);
      else if (key == "effective_mass_ratio") cfg.effective_mass_ratio = p.parse_double(value, key);
      else if (key == "rel_permittivity") cfg.rel_permittivity = p.parse_double(value, key);
      else if (key == "slot_width_um") cfg.slot_width_um = p.parse_double(value, key);
      else if (key == "qw_thickness_nm") cfg.qw_thickness_nm = p.parse_double(value, key);
      else if (key == "cr_lifetime_ps") cfg.cr_lifetime_ps = p.parse_double(value, key);
      else if (key == "mp_lifetime_ps") cfg.mp_lifetime_ps = p.parse_double(value, key);
      else if (detail::parse_indexed_key(key, "mp_lifetime_ps_", idx)) {
        cfg.mp_lifetime_ps_override[idx] = p.parse_double(value, key);
      } else p.fail("unknown key '" + key + "' in [sample]");
    } else if (section == "cavity") {
      if (key == "frequency_thz") cfg.frequency_thz = p.parse_double(value, key);
      else if (key == "l_eff_um") cfg.l_eff_um = p.parse_double(value, key);
      else if (key == "gold_thickness_nm") cfg.gold_thickness_nm = p.parse_double(value, key);
      else if (key == "gold_plasma_thz") cfg.gold_plasma_thz = p.parse_double(value, key);
      else if (key == "gold_scattering_thz") cfg.gold_scattering_thz = p.parse_double(value, key);
      else if (key == "gaas_thickness_um") cfg.gaas_thickness_um = p.parse_double(value, key);
      else if (key == "gaas_value") cfg.gaas_value = p.parse_double(value, key);
      else if (key == "gaas_value_is_index") cfg.gaas_value_is_index = p.parse_bool(value, key);
      else p.fail("unknown key '" + key + "' in [cavity]");
    } else if (section == "couplings") {
      if (key == "normalized") cfg.normalized = p.parse_bool(value, key);
      else if (key == "g") cfg.g = p.parse_double(value, key);
      else if (key == "mp_modes") cfg.mp_modes = p.parse_int_list(value, key);
      else if (detail::parse_indexed_key(key, "g_", idx)) {
        cfg.g_n[idx] = p.parse_double(value, key);
      } else p.fail("unknown key '" + key + "' in [couplings]");
    } else if (section == "sweep") {
      if (key == "b_min_t") cfg.b_min_t = p.parse_double(value, key);
      else if (key == "b_max_t") cfg.b_max_t = p.parse_double(value, key);
      else if (key == "b_points") cfg.b_points = p.parse_int(value, key);
      else if (key == "freq_min_thz") cfg.freq_min_thz = p.parse_double(value, key);
      else if (key == "freq_max_thz") cfg.freq_max_thz = p.parse_double(value, key);
      else if (key == "freq_points") cfg.freq_points = p.parse_int(value, key);
      else p.fail("unknown key '" + key + "' in [sweep]");
    } else if (section == "fit") {
      if (key == "free_params") cfg.fit_free_params = p.parse_string_list(value, key);
      else if (key == "max_iterations") cfg.fit_max_iterations = p.parse_int(value, key);
      else if (key == "tolerance_thz") cfg.fit_tolerance_thz = p.parse_double(value, key);
      else if (key == "noise_frac") cfg.fit_noise_frac = p.parse_double(value, key);
      else if (key.size() > 6 && key.substr(key.size() - 6) == "_lower") {
        cfg.fit_lower[key.substr(0, key.size() - 6)] = p.parse_double(value, key);
      } else if (key.size() > 6 && key.substr(key.size() - 6) == "_upper") {
        cfg.fit_upper[key.substr(0, key.size() - 6)] = p.parse_double(value, key);
      } else if (key.size() > 5 && key.substr(key.size() - 5) == "_init") {
        cfg.fit_initial[key.substr(0, key.size() - 5)] = p.parse_double(value, key);
      } else p.fail("unknown key '" + key + "' in [fit]");
    } else if (section == "output") {
      if (key == "directory") cfg.output_directory = value;
      else p.fail("unknown key '" + key + "' in [output]");
    }
  }

  // validation, naming the offending key
  const auto require = [&](bool ok, const std::string& key,
                           const std::string& constraint) {
    if (!ok) {
      throw config_error(source + ": " + key + ": " + constraint);
    }
  };
  require(cfg.ne_per_cm2 > 0, "ne_per_cm2", "must be > 0");
  require(cfg.effective_mass_ratio > 0, "effective_mass_ratio", "must be > 0");
  require(cfg.rel_permittivity > 0, "rel_permittivity", "must be > 0");
  require(cfg.slot_width_um > 0, "slot_width_um", "must be > 0");
  require(cfg.qw_thickness_nm > 0, "qw_thickness_nm", "must be > 0");
  require(cfg.cr_lifetime_ps > 0, "cr_lifetime_ps", "must be > 0");
  require(cfg.mp_lifetime_ps > 0, "mp_lifetime_ps", "must be > 0");
  require(cfg.frequency_thz > 0, "frequency_thz", "must be > 0");
  require(cfg.l_eff_um > 0, "l_eff_um", "must be > 0");
  require(cfg.gold_thickness_nm > 0, "gold_thickness_nm", "must be > 0");
  require(cfg.gold_plasma_thz > 0, "gold_plasma_thz", "must be > 0");
  require(cfg.gold_scattering_thz > 0, "gold_scattering_thz", "must be > 0");
  require(cfg.gaas_thickness_um > 0, "gaas_thickness_um", "must be > 0");
  require(cfg.gaas_value > 0, "gaas_value", "must be > 0");
  require(cfg.g >= 0, "g", "must be >= 0");
  for (int n : cfg.mp_modes) {
    require(n > 0 && n % 2 == 1, "mp_modes",
            "mode indices must be odd positive integers");
  }
  require(std::is_sorted(cfg.mp_modes.begin(), cfg.mp_modes.end()) &&
              std::adjacent_find(cfg.mp_modes.begin(), cfg.mp_modes.end()) ==
                  cfg.mp_modes.end(),
          "mp_modes", "must be strictly increasing");
  for (const auto& [n, v] : cfg.g_n) {
    require(std::find(cfg.mp_modes.begin(), cfg.mp_modes.end(), n) !=
                cfg.mp_modes.end(),
            "g_" + std::to_string(n), "mode not listed in mp_modes");
    require(v >= 0, "g_" + std::to_string(n), "must be >= 0");
  }
  for (const auto& [n, v] : cfg.mp_lifetime_ps_override) {
    require(n > 0 && n % 2 == 1, "mp_lifetime_ps_" + std::to_string(n),
            "mode index must be odd positive");
    require(v > 0, "mp_lifetime_ps_" + std::to_string(n), "must be > 0");
  }
  require(cfg.b_min_t >= 0, "b_min_t", "must be >= 0");
  require(cfg.b_max_t > cfg.b_min_t, "b_max_t", "must exceed b_min_t");
  require(cfg.b_points >= 1, "b_points", "must be >= 1");
  require(cfg.freq_min_thz > 0, "freq_min_thz", "must be > 0");
  require(cfg.freq_max_thz > cfg.freq_min_thz, "freq_max_thz",
          "must exceed freq_min_thz");
  require(cfg.freq_points >= 2, "freq_points", "must be >= 2");
  require(cfg.fit_max_iterations >= 1, "max_iterations", "must be >= 1");
  require(cfg.fit_tolerance_thz > 0, "tolerance_thz", "must be > 0");
  require(cfg.fit_noise_frac >= 0, "noise_frac", "must be >= 0");
  for (const auto& t : cfg.fit_free_params) {
    require(detail::is_fit_param_token(t), "free_params",
            "unknown parameter token '" + t + "'");
  }
  for (const auto* m : {&cfg.fit_lower, &cfg.fit_upper, &cfg.fit_initial}) {
    for (const auto& [t, v] : *m) {
      require(detail::is_fit_param_token(t), "fit bounds",
              "unknown parameter token '" + t + "'");
      require(std::isfinite(v), t, "must be finite");
    }
  }
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw config_error("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace landau
