// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "landau/errors.hpp"
#include "landau/transmission.hpp"

namespace landau {

struct Peak {
  double field_tesla = 0.0;
  double freq_thz = 0.0;
  double height = 0.0;
};

namespace detail {

// Topographic prominence of a local maximum: walk outward on each side
// until terrain rises above the peak (or the edge); the key saddle is the
// higher of the two valley floors.
inline double prominence(std::span<const double> y, std::size_t i) {
  double left_floor = y[i];
  for (std::size_t j = i; j-- > 0;) {
    left_floor = std::min(left_floor, y[j]);
    if (y[j] > y[i]) break;
  }
  double right_floor = y[i];
  for (std::size_t j = i + 1; j < y.size(); ++j) {
    right_floor = std::min(right_floor, y[j]);
    if (y[j] > y[i]) break;
  }
  return y[i] - std::max(left_floor, right_floor);
}

}  // namespace detail

/// Local maxima of one column with relative topographic prominence at least
/// `prominence_frac` of the column's value range, at most `max_peaks`
/// strongest, positions refined by 3-point parabolic interpolation.
inline std::vector<Peak> find_column_peaks(std::span<const double> freqs,
                                           std::span<const double> values,
                                           double field_tesla,
                                           double prominence_frac,
                                           std::size_t max_peaks) {
  if (!(prominence_frac > 0.0)) {
    throw domain_error("find_column_peaks: prominence must be > 0");
  }
  std::vector<Peak> found;
  if (values.size() < 3) return found;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return found;

  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (!(values[i] > values[i - 1]) || !(values[i] >= values[i + 1])) continue;
    const double prom = detail::prominence(values, i);
    if (prom < prominence_frac * range) continue;
    const double denom = values[i - 1] - 2.0 * values[i] + values[i + 1];
    double shift = 0.0;
    if (denom != 0.0) {
      shift = 0.5 * (values[i - 1] - values[i + 1]) / denom;
      shift = std::clamp(shift, -0.5, 0.5);
    }
    const double step =
        (i + 1 < freqs.size()) ? freqs[i + 1] - freqs[i] : freqs[i] - freqs[i - 1];
    found.push_back(Peak{field_tesla, freqs[i] + shift * step, values[i]});
  }
  if (found.size() > max_peaks) {
    std::stable_sort(found.begin(), found.end(),
                     [](const Peak& a, const Peak& b) {
                       return a.height > b.height;
                     });
    found.resize(max_peaks);
    std::stable_sort(found.begin(), found.end(),
                     [](const Peak& a, const Peak& b) {
                       return a.freq_thz < b.freq_thz;
                     });
  }
  return found;
}

/// Per-field-column peak extraction over the whole map. An empty result is
/// a valid outcome.
inline std::vector<Peak> extract_peaks(const TransmissionMap& map,
                                       double prominence_frac,
                                       std::size_t max_peaks) {
  std::vector<Peak> out;
  const std::size_t nf = map.freq_thz.size();
  for (std::size_t bi = 0; bi < map.field_tesla.size(); ++bi) {
    std::span<const double> column(map.values.data() + bi * nf, nf);
    std::vector<Peak> col = find_column_peaks(
        map.freq_thz, column, map.field_tesla[bi], prominence_frac, max_peaks);
    out.insert(out.end(), col.begin(), col.end());
  }
  return out;
}

}  // namespace landau
