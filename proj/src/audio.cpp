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

#include "synthscape/audio.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace synthscape {

double rms_dbfs(const AudioClip& clip) {
  if (clip.samples.empty()) {
    throw std::invalid_argument("rms_dbfs: empty clip");
  }
  double acc = 0.0;
  for (double s : clip.samples) acc += s * s;
  const double mean = acc / static_cast<double>(clip.samples.size());
  if (mean <= 0.0) return kSilenceDbfs;
  return 10.0 * std::log10(mean);
}

NormalizeResult normalize_rms(const AudioClip& clip, double target_dbfs) {
  const double level = rms_dbfs(clip);
  if (level == kSilenceDbfs) {
    throw std::invalid_argument("normalize_rms: silent input");
  }
  const double gain = std::pow(10.0, (target_dbfs - level) / 20.0);
  NormalizeResult out;
  out.clip = clip;
  size_t clipped = 0;
  for (double& s : out.clip.samples) {
    s *= gain;
    if (s > 1.0) {
      s = 1.0;
      ++clipped;
    } else if (s < -1.0) {
      s = -1.0;
      ++clipped;
    }
  }
  out.clipped_fraction =
      static_cast<double>(clipped) / static_cast<double>(out.clip.samples.size());
  return out;
}

AudioClip add_gaussian_noise(const AudioClip& clip, double sigma, Rng& rng) {
  if (sigma < 0.0) {
    throw std::invalid_argument("add_gaussian_noise: sigma must be >= 0");
  }
  AudioClip out = clip;
  if (sigma == 0.0) return out;
  for (double& s : out.samples) s += sigma * rng.gaussian();
  return out;
}

AudioClip mix(const AudioClip& base, const AudioClip& overlay, double offset_s,
              double gain) {
  if (base.sample_rate != overlay.sample_rate) {
    throw std::invalid_argument("mix: sample rate mismatch");
  }
  if (offset_s < 0.0) {
    throw std::invalid_argument("mix: negative offset");
  }
  const size_t offset =
      static_cast<size_t>(std::llround(offset_s * base.sample_rate));
  if (offset + overlay.samples.size() > base.samples.size()) {
    throw std::invalid_argument("mix: overlay extends past end of base");
  }
  AudioClip out = base;
  for (size_t i = 0; i < overlay.samples.size(); ++i) {
    out.samples[offset + i] += gain * overlay.samples[i];
  }
  return out;
}

AudioClip crop(const AudioClip& clip, double start_s, double duration_s) {
  if (start_s < 0.0 || duration_s <= 0.0) {
    throw std::invalid_argument("crop: invalid interval");
  }
  const size_t start =
      static_cast<size_t>(std::llround(start_s * clip.sample_rate));
  const size_t count =
      static_cast<size_t>(std::llround(duration_s * clip.sample_rate));
  if (start + count > clip.samples.size()) {
    throw std::invalid_argument("crop: interval extends past end of clip");
  }
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.source_id = clip.source_id;
  out.freq_bounds = clip.freq_bounds;
  out.samples.assign(clip.samples.begin() + start,
                     clip.samples.begin() + start + count);
  return out;
}

}  // namespace synthscape
