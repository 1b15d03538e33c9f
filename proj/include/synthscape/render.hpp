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

#include <cstdint>

#include "synthscape/grid.hpp"
#include "synthscape/pcen.hpp"
#include "synthscape/stft.hpp"

namespace synthscape {

constexpr int kImageSize = 256;

/// Affine maps between image pixels and physical coordinates. x runs left to
/// right over [0, time_span_s]; y runs top to bottom from f_max down to f_min
/// (log-spaced). Continuous pixel coordinates: the edges of pixel (x, y) are
/// [x, x+1] and [y, y+1].
struct AxisMap {
  double time_span_s = 0.0;
  double f_min = 0.0;
  double f_max = 0.0;

  double time_to_x(double t_s) const;
  double x_to_time(double x) const;
  /// Frequencies outside [f_min, f_max] are clamped onto the axis.
  double freq_to_y(double hz) const;
  double y_to_freq(double y) const;
};

struct SpectroImage {
  Grid<uint8_t> pixels;  // kImageSize x kImageSize intensities
  AxisMap axes;
};

struct RenderParams {
  PcenParams pcen;
  double f_min = 40.0;
  double f_max = 0.0;  // 0 selects Nyquist
  int log_bins = 256;
};

/// pcen -> log_freq_remap -> orient (low frequencies at the bottom, time left
/// to right) -> lanczos_resize(256, 256) -> per-image min-max scale to
/// [0, 255] -> quantize. A constant input produces an all-zero image.
SpectroImage render_image(const PowerSpectrogram& spec,
                          const RenderParams& params);

}  // namespace synthscape
