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

#include <string>
#include <vector>

#include "synthscape/audio.hpp"
#include "synthscape/grid.hpp"
#include "synthscape/stft.hpp"

namespace synthscape {

struct Interval {
  double t0 = 0.0;
  double t1 = 0.0;
};

/// Time-frequency rectangle in physical units.
struct CropBox {
  double t0 = 0.0;
  double t1 = 0.0;
  double f0 = 0.0;
  double f1 = 0.0;
};

/// Per-bin mean power of a vocalisation-free stretch of a recording.
struct NoiseProfile {
  std::vector<double> mean_power;
  StftParams params;
  Interval interval;
};

/// A vocalisation cut free of its background. The mask is boolean over
/// stft_power(clip, params) of the stored clip (rows = frames, cols = bins).
struct IsolatedVocalisation {
  AudioClip clip;
  Grid<uint8_t> source_mask;
  StftParams params;
  std::string class_label;
  FreqBand freq_extent;
  double rms_dbfs = kSilenceDbfs;
};

constexpr double kDefaultMaskThresholdDb = -45.0;
constexpr double kDefaultGateDbfs = -70.0;

/// Mean power per bin over the frames lying fully inside the interval. The
/// interval must contain at least one whole analysis frame.
NoiseProfile estimate_noise_profile(const AudioClip& clip, Interval interval,
                                    const StftParams& params = {});

/// Per cell: new power = max(|X|^2 - over_k * profile[bin], 0); magnitude is
/// set to sqrt(new power) with phase preserved.
ComplexSpectrogram spectral_subtract(const ComplexSpectrogram& spec,
                                     const NoiseProfile& profile,
                                     double over_k = 1.0);

/// True where a cell's center lies inside the crop box and its power is
/// within threshold_db of the in-box peak. Connected components (8-way)
/// holding under 0.1% of the in-mask energy are discarded.
Grid<uint8_t> extract_mask(const PowerSpectrogram& spec, const CropBox& box,
                           double threshold_db = kDefaultMaskThresholdDb);

/// Full isolation pipeline: stft_complex -> spectral_subtract with a profile
/// from noise_interval -> zero cells outside extract_mask -> istft -> trim to
/// the mask's frame span. The crop box is intersected with vocal_interval in
/// time. Throws ConstraintError when nothing survives the mask threshold.
IsolatedVocalisation isolate(const AudioClip& clip, Interval vocal_interval,
                             Interval noise_interval, const CropBox& box,
                             double threshold_db, std::string class_label,
                             double over_k = 1.0,
                             const StftParams& params = {});

/// Inclusive gate: accept iff the clip RMS is at or above the threshold.
bool gate_rms(const IsolatedVocalisation& voc,
              double threshold_dbfs = kDefaultGateDbfs);

}  // namespace synthscape
