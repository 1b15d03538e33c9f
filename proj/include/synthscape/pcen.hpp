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

/// Per-channel energy normalization operating point.
struct PcenParams {
  double smoothing = 0.025;  // IIR coefficient s, in (0, 1]
  double alpha = 0.98;       // gain exponent
  double delta = 2.0;        // bias
  double root = 0.5;         // compression exponent r
  double eps = 1e-6;         // numeric floor

  void validate() const;
};

/// Applies PCEN per frequency bin over time:
///   M[t] = (1 - s) * M[t-1] + s * E[t],  M[0] = E[0]
///   out[t] = (E[t] / (eps + M[t])^alpha + delta)^r - delta^r
/// Input rows are time frames, columns are frequency bins.
Grid<double> pcen(const Grid<double>& power, const PcenParams& params = {});

}  // namespace synthscape
