// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "landau/config.hpp"
#include "landau/errors.hpp"
#include "landau/fit.hpp"
#include "landau/hopfield.hpp"
#include "landau/peaks.hpp"
#include "landau/transmission.hpp"

namespace landau {

// CSV dialect: comma separator, '.' decimal point, mandatory header row,
// '#'-prefixed comment lines permitted anywhere.

namespace detail {

/// Reproducibility header: the full resolved config, one '# '-prefixed line
/// each, so outputs can be regenerated from any result file.
inline void write_echo_header(std::ostream& os, const Config& cfg) {
  std::istringstream lines(cfg.echo());
  std::string line;
  while (std::getline(lines, line)) {
    os << "# " << line << "\n";
  }
}

inline std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t");
    const auto e = cell.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? std::string()
                                         : cell.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace detail

inline void write_spectrum_csv(std::ostream& os, const PolaritonSpectrum& spec,
                               const Config& cfg) {
  detail::write_echo_header(os, cfg);
  os << "B_T,branch_label,freq_THz,w2,y2,x2";
  for (int n : spec.mode_indices) os << ",x" << n << "_2";
  os << "\n";
  using detail::format_double;
  for (std::size_t fi = 0; fi < spec.field_tesla.size(); ++fi) {
    for (const auto& br : spec.branches[fi]) {
      os << format_double(spec.field_tesla[fi]) << ',' << br.label << ','
         << format_double(br.frequency.thz) << ','
         << format_double(std::norm(br.w)) << ','
         << format_double(std::norm(br.y)) << ','
         << format_double(std::norm(br.x));
      for (const auto& xn : br.x_n) os << ',' << format_double(std::norm(xn));
      os << "\n";
    }
  }
}

inline void write_map_long_csv(std::ostream& os, const TransmissionMap& map,
                               const Config& cfg) {
  detail::write_echo_header(os, cfg);
  os << "B_T,freq_THz,T\n";
  using detail::format_double;
  for (std::size_t bi = 0; bi < map.field_tesla.size(); ++bi) {
    for (std::size_t fi = 0; fi < map.freq_thz.size(); ++fi) {
      os << format_double(map.field_tesla[bi]) << ','
         << format_double(map.freq_thz[fi]) << ','
         << format_double(map.at(bi, fi)) << "\n";
    }
  }
}

/// Heatmap-friendly layout: first row carries the frequency axis, first
/// column the field axis.
inline void write_map_matrix_csv(std::ostream& os, const TransmissionMap& map,
                                 const Config& cfg) {
  detail::write_echo_header(os, cfg);
  using detail::format_double;
  os << "B_T\\freq_THz";
  for (double f : map.freq_thz) os << ',' << format_double(f);
  os << "\n";
  for (std::size_t bi = 0; bi < map.field_tesla.size(); ++bi) {
    os << format_double(map.field_tesla[bi]);
    for (std::size_t fi = 0; fi < map.freq_thz.size(); ++fi) {
      os << ',' << format_double(map.at(bi, fi));
    }
    os << "\n";
  }
}

inline void write_peaks_csv(std::ostream& os, const std::vector<Peak>& peaks,
                            const Config& cfg) {
  detail::write_echo_header(os, cfg);
  os << "B_T,freq_THz,height\n";
  using detail::format_double;
  for (const auto& p : peaks) {
    os << format_double(p.field_tesla) << ',' << format_double(p.freq_thz)
       << ',' << format_double(p.height) << "\n";
  }
}

inline void write_fit_csv(std::ostream& os, const FitResult& result,
                          const Config& cfg) {
  detail::write_echo_header(os, cfg);
  os << "quantity,value\n";
  using detail::format_double;
  for (const auto& [name, v] : result.best_params) {
    os << name << ',' << format_double(v) << "\n";
  }
  os << "residual_rms_THz," << format_double(result.residual_rms_thz) << "\n";
  os << "iterations," << result.iterations << "\n";
  os << "converged," << (result.converged ? 1 : 0) << "\n";
}

/// Reads `B_T,freq_THz[,weight][,label]`; header row mandatory, column
/// order free. Violations report the offending row number.
inline PeakDataset read_peaks_csv(std::istream& in,
                                  const std::string& source) {
  PeakDataset out;
  std::string line;
  int row = 0;
  int col_b = -1, col_f = -1, col_w = -1, col_l = -1;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') continue;
    const auto cells = detail::split_csv_row(line);
    if (!have_header) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "B_T") col_b = static_cast<int>(i);
        else if (cells[i] == "freq_THz") col_f = static_cast<int>(i);
        else if (cells[i] == "weight") col_w = static_cast<int>(i);
        else if (cells[i] == "label") col_l = static_cast<int>(i);
        else {
          throw schema_error(source + ": row " + std::to_string(row) +
                             ": unknown column '" + cells[i] + "'");
        }
      }
      if (col_b < 0 || col_f < 0) {
        throw schema_error(source + ": row " + std::to_string(row) +
                           ": header must name B_T and freq_THz columns");
      }
      have_header = true;
      continue;
    }
    const auto need = static_cast<std::size_t>(
        std::max({col_b, col_f, col_w, col_l}) + 1);
    if (cells.size() < need) {
      throw schema_error(source + ": row " + std::to_string(row) +
                         ": expected " + std::to_string(need) + " columns");
    }
    const auto number = [&](const std::string& cell) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size() ||
          !std::isfinite(v)) {
        throw schema_error(source + ": row " + std::to_string(row) +
                           ": '" + cell + "' is not a finite number");
      }
      return v;
    };
    PeakPoint p;
    p.field_tesla = number(cells[col_b]);
    p.freq_thz = number(cells[col_f]);
    if (col_w >= 0) {
      p.weight = number(cells[col_w]);
      if (p.weight < 0.0) {
        throw schema_error(source + ": row " + std::to_string(row) +
                           ": weight must be >= 0");
      }
    }
    if (col_l >= 0) p.label = cells[col_l];
    out.points.push_back(std::move(p));
  }
  if (!have_header) {
    throw schema_error(source + ": missing header row");
  }
  if (out.points.empty()) {
    throw schema_error(source + ": no data rows");
  }
  return out;
}

inline PeakDataset read_peaks_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw schema_error("cannot open peaks CSV '" + path + "'");
  }
  return read_peaks_csv(in, path);
}

}  // namespace landau
