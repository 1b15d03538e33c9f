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

#include "synthscape/resample.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace synthscape {

namespace {

constexpr int kTapsPerSide = 32;  // 64 taps per output sample
constexpr double kKaiserBeta = 8.0;

// Zeroth-order modified Bessel function of the first kind, power series.
double bessel_i0(double x) {
  double sum = 1.0;
  double term = 1.0;
  const double half_x = x / 2.0;
  for (int k = 1; k < 32; ++k) {
    term *= (half_x / k) * (half_x / k);
    sum += term;
    if (term < sum * 1e-16) break;
  }
  return sum;
}

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  const double px = M_PI * x;
  return std::sin(px) / px;
}

// Kaiser window sampled over u in [0, 1], linearly interpolated. Tabulated
// once per call; the I0 series is too slow to evaluate per tap.
class KaiserTable {
 public:
  explicit KaiserTable(double beta) : inv_i0_(1.0 / bessel_i0(beta)) {
    for (size_t i = 0; i < kPoints; ++i) {
      const double u = static_cast<double>(i) / (kPoints - 1);
      table_[i] = bessel_i0(beta * std::sqrt(1.0 - u * u)) * inv_i0_;
    }
  }

  double operator()(double u) const {
    u = std::abs(u);
    if (u >= 1.0) return 0.0;
    const double x = u * (kPoints - 1);
    const size_t i = static_cast<size_t>(x);
    const double frac = x - static_cast<double>(i);
    if (i + 1 >= kPoints) return table_[kPoints - 1];
    return table_[i] + frac * (table_[i + 1] - table_[i]);
  }

 private:
  static constexpr size_t kPoints = 4096;
  double table_[kPoints];
  double inv_i0_;
};

}  // namespace

AudioClip resample(const AudioClip& clip, int target_rate) {
  if (target_rate <= 0) {
    throw std::invalid_argument("resample: target rate must be positive");
  }
  if (clip.sample_rate == target_rate) return clip;
  if (clip.sample_rate <= 0) {
    throw std::invalid_argument("resample: clip has no sample rate");
  }

  const double ratio =
      static_cast<double>(target_rate) / static_cast<double>(clip.sample_rate);
  // Cutoff relative to the input rate; below 1 only when downsampling.
  const double cutoff = std::min(1.0, ratio);
  const double half_width = kTapsPerSide / cutoff;

  const size_t in_len = clip.samples.size();
  const size_t out_len = static_cast<size_t>(
      std::llround(static_cast<double>(in_len) * ratio));

  static const KaiserTable kaiser(kKaiserBeta);

  AudioClip out;
  out.sample_rate = target_rate;
  out.source_id = clip.source_id;
  out.freq_bounds = clip.freq_bounds;
  out.samples.resize(out_len);

  const double step = 1.0 / ratio;  // input samples per output sample
  for (size_t n = 0; n < out_len; ++n) {
    const double center = static_cast<double>(n) * step;
    const long first =
        std::max(0l, static_cast<long>(std::ceil(center - half_width)));
    const long last = std::min(static_cast<long>(in_len) - 1,
                               static_cast<long>(std::floor(center + half_width)));
    double acc = 0.0;
    double weight_sum = 0.0;
    for (long k = first; k <= last; ++k) {
      const double x = static_cast<double>(k) - center;
      const double w = sinc(cutoff * x) * kaiser(x / half_width);
      acc += w * clip.samples[static_cast<size_t>(k)];
      weight_sum += w;
    }
    out.samples[n] = weight_sum != 0.0 ? acc / weight_sum : 0.0;
  }
  return out;
}

}  // namespace synthscape
