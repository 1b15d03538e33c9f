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

#include "synthscape/pcen.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace synthscape {

void PcenParams::validate() const {
  if (!(smoothing > 0.0 && smoothing <= 1.0)) {
    throw std::invalid_argument("PcenParams: smoothing must be in (0, 1]");
  }
  if (eps <= 0.0) throw std::invalid_argument("PcenParams: eps must be > 0");
  if (root <= 0.0) throw std::invalid_argument("PcenParams: root must be > 0");
}

Grid<double> pcen(const Grid<double>& power, const PcenParams& params) {
  params.validate();
  if (power.empty()) throw std::invalid_argument("pcen: empty input");

  const size_t frames = power.rows();
  const size_t bins = power.cols();
  const double s = params.smoothing;
  const double delta_r = std::pow(params.delta, params.root);
  const bool unit_alpha = params.alpha == 1.0;
  const bool sqrt_root = params.root == 0.5;

  Grid<double> out(frames, bins);
  std::vector<double> smooth(power.row(0), power.row(0) + bins);
  for (size_t t = 0; t < frames; ++t) {
    const double* e_row = power.row(t);
    double* o_row = out.row(t);
    if (t > 0) {
      for (size_t f = 0; f < bins; ++f) {
        smooth[f] = (1.0 - s) * smooth[f] + s * e_row[f];
      }
    }
    for (size_t f = 0; f < bins; ++f) {
      const double m = params.eps + smooth[f];
      const double gain = unit_alpha ? m : std::pow(m, params.alpha);
      const double v = e_row[f] / gain + params.delta;
      o_row[f] = (sqrt_root ? std::sqrt(v) : std::pow(v, params.root)) - delta_r;
    }
  }
  return out;
}

}  // namespace synthscape
