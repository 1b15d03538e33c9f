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

#include "synthscape/render.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "synthscape/remap.hpp"
#include "synthscape/resize.hpp"

namespace synthscape {

double AxisMap::time_to_x(double t_s) const {
  return t_s / time_span_s * kImageSize;
}

double AxisMap::x_to_time(double x) const {
  return x * time_span_s / kImageSize;
}

double AxisMap::freq_to_y(double hz) const {
  const double f = std::clamp(hz, f_min, f_max);
  return kImageSize * std::log(f_max / f) / std::log(f_max / f_min);
}

double AxisMap::y_to_freq(double y) const {
  return f_max * std::exp(-y / kImageSize * std::log(f_max / f_min));
}

SpectroImage render_image(const PowerSpectrogram& spec,
                          const RenderParams& params) {
  const double f_max = params.f_max > 0.0 ? params.f_max : spec.nyquist();
  const Grid<double> normalized = pcen(spec.values, params.pcen);
  const Grid<double> remapped = log_freq_remap(
      normalized, spec.bin_hz(), params.f_min, f_max, params.log_bins);

  // Orient rows = frequency descending (low at the bottom), cols = time.
  const size_t bins = remapped.cols();
  Grid<double> oriented(bins, remapped.rows());
  for (size_t t = 0; t < remapped.rows(); ++t) {
    const double* src = remapped.row(t);
    for (size_t j = 0; j < bins; ++j) oriented(bins - 1 - j, t) = src[j];
  }

  const Grid<double> resized = lanczos_resize(oriented, kImageSize, kImageSize);

  double mn = resized.storage()[0];
  double mx = mn;
  for (double v : resized.storage()) {
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }

  SpectroImage image;
  image.pixels = Grid<uint8_t>(kImageSize, kImageSize);
  if (mx > mn) {
    const double scale = 255.0 / (mx - mn);
    for (size_t i = 0; i < resized.size(); ++i) {
      const long q = std::lround((resized.storage()[i] - mn) * scale);
      image.pixels.storage()[i] =
          static_cast<uint8_t>(std::clamp(q, 0L, 255L));
    }
  }

  const int sr = spec.sample_rate;
  const auto& p = spec.params;
  image.axes.time_span_s =
      (static_cast<double>(spec.num_frames() - 1) * p.hop + p.window_size) /
      static_cast<double>(sr);
  image.axes.f_min = params.f_min;
  image.axes.f_max = f_max;
  return image;
}

}  // namespace synthscape
