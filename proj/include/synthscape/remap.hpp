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

#pragma once

#include "synthscape/grid.hpp"

namespace synthscape {

/// Log-spaced frequency axis: bin j is centered at
/// f_min * (f_max / f_min)^(j / (out_bins - 1)).
struct LogFreqAxis {
  double f_min = 0.0;
  double f_max = 0.0;
  int bins = 0;

  double center_hz(double j) const;
  /// Fractional bin position of a frequency (inverse of center_hz).
  double position(double hz) const;
};

/// Remaps the frequency axis (columns) of a time x frequency matrix onto a
/// log-spaced axis by linear interpolation between source bins. `bin_hz` is
/// the source bin spacing; source bin k is centered at k * bin_hz.
Grid<double> log_freq_remap(const Grid<double>& spec, double bin_hz,
                            double f_min, double f_max, int out_bins);

}  // namespace synthscape
