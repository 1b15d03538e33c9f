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

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "synthscape/rng.hpp"

namespace synthscape {

/// Inclusive frequency band in Hz.
struct FreqBand {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(const FreqBand& inner) const {
    return lo <= inner.lo && inner.hi <= hi;
  }
};

/// Mono waveform. Samples are linear amplitudes; any normalization step
/// clips them back into [-1, 1].
struct AudioClip {
  std::vector<double> samples;
  int sample_rate = 0;
  std::string source_id;
  std::optional<FreqBand> freq_bounds;

  size_t num_samples() const { return samples.size(); }
  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

constexpr double kSilenceDbfs = -std::numeric_limits<double>::infinity();

/// RMS level in dBFS; all-zero input reports -infinity. Throws on empty clips.
double rms_dbfs(const AudioClip& clip);

struct NormalizeResult {
  AudioClip clip;
  /// Fraction of samples hard-clipped to [-1, 1] by the applied gain.
  double clipped_fraction = 0.0;
};

/// Scales the clip so its RMS hits `target_dbfs`, hard-clipping to [-1, 1].
/// Throws std::invalid_argument for silent input.
NormalizeResult normalize_rms(const AudioClip& clip, double target_dbfs);

/// Adds zero-mean gaussian noise with standard deviation `sigma`. Output does
/// not get re-clipped; callers normalize afterwards.
AudioClip add_gaussian_noise(const AudioClip& clip, double sigma, Rng& rng);

/// out[i] = base[i] + gain * overlay[i - offset_samples] over the overlap.
/// The overlay must fit entirely inside the base.
AudioClip mix(const AudioClip& base, const AudioClip& overlay, double offset_s,
              double gain);

/// Cuts [start_s, start_s + duration_s) out of the clip.
AudioClip crop(const AudioClip& clip, double start_s, double duration_s);

}  // namespace synthscape
