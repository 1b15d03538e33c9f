// Copyright 2026 The Synthscape Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "synthscape/remap.hpp"

#include <cmath>
#include <stdexcept>

namespace synthscape {

double LogFreqAxis::center_hz(double j) const {
  if (bins == 1) return f_min;
  return f_min * std::pow(f_max / f_min, j / static_cast<double>(bins - 1));
}

double LogFreqAxis::position(double hz) const {
  if (bins == 1) return 0.0;
  return static_cast<double>(bins - 1) * std::log(hz / f_min) /
         std::log(f_max / f_min);
}

Grid<double> log_freq_remap(const Grid<double>& spec, double bin_hz,
                            double f_min, double f_max, int out_bins) {
  if (bin_hz <= 0.0) throw std::invalid_argument("bin_hz must be positive");
  if (out_bins < 2) throw std::invalid_argument("out_bins must be >= 2");
  if (!(0.0 < f_min && f_min < f_max)) {
    throw std::invalid_argument("need 0 < f_min < f_max");
  }
  const double top_hz = static_cast<double>(spec.cols() - 1) * bin_hz;
  if (f_max > top_hz + 1e-9) {
    throw std::invalid_argument("f_max exceeds the source frequency range");
  }

  const LogFreqAxis axis{f_min, f_max, out_bins};
  Grid<double> out(spec.rows(), static_cast<size_t>(out_bins));
  // Interpolation weights depend only on the target bin, not the frame.
  std::vector<size_t> lo_bin(static_cast<size_t>(out_bins));
  std::vector<double> frac(static_cast<size_t>(out_bins));
  for (int j = 0; j < out_bins; ++j) {
    const double pos = axis.center_hz(j) / bin_hz;
    double lo = std::floor(pos);
    if (lo > static_cast<double>(spec.cols() - 2)) {
      lo = static_cast<double>(spec.cols() - 2);
    }
    if (lo < 0.0) lo = 0.0;
    lo_bin[static_cast<size_t>(j)] = static_cast<size_t>(lo);
    frac[static_cast<size_t>(j)] = pos - lo;
  }
  for (size_t t = 0; t < spec.rows(); ++t) {
    const double* src = spec.row(t);
    double* dst = out.row(t);
    for (size_t j = 0; j < static_cast<size_t>(out_bins); ++j) {
      const size_t k = lo_bin[j];
      const double a = frac[j];
      dst[j] = (1.0 - a) * src[k] + a * src[k + 1];
    }
  }
  return out;
}

}  // namespace synthscape
