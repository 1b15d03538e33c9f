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

#include <complex>
#include <string>

#include "synthscape/audio.hpp"
#include "synthscape/grid.hpp"

namespace synthscape {

enum class WindowKind { kHann, kHamming, kRect };

std::string window_name(WindowKind kind);
WindowKind window_from_name(const std::string& name);

/// STFT analysis parameters. Frames start at sample 0 with no centering or
/// padding, so an N-sample clip yields 1 + floor((N - window) / hop) frames.
struct StftParams {
  int fft_size = 2048;
  int window_size = 2048;
  int hop = 512;
  WindowKind window = WindowKind::kHann;

  int num_bins() const { return fft_size / 2 + 1; }
  void validate() const;
  bool operator==(const StftParams&) const = default;
};

size_t num_stft_frames(size_t num_samples, const StftParams& params);

/// Periodic window of `window_size` samples.
std::vector<double> make_window(WindowKind kind, int window_size);

/// Time x frequency power matrix (|windowed DFT coefficient|^2).
struct PowerSpectrogram {
  Grid<double> values;  // rows = frames, cols = bins
  StftParams params;
  int sample_rate = 0;

  size_t num_frames() const { return values.rows(); }
  size_t num_bins() const { return values.cols(); }
  double bin_hz() const {
    return static_cast<double>(sample_rate) / params.fft_size;
  }
  double nyquist() const { return sample_rate / 2.0; }
  /// Time span covered by frame t, in seconds.
  double frame_start_s(size_t t) const {
    return static_cast<double>(t) * params.hop / sample_rate;
  }
  double frame_end_s(size_t t) const {
    return (static_cast<double>(t) * params.hop + params.window_size) /
           sample_rate;
  }
};

/// Complex STFT; |value|^2 reproduces the PowerSpectrogram entry.
struct ComplexSpectrogram {
  Grid<std::complex<double>> values;
  StftParams params;
  int sample_rate = 0;
  /// Length of the analyzed clip, so istft can restore it exactly.
  size_t num_samples = 0;

  size_t num_frames() const { return values.rows(); }
  size_t num_bins() const { return values.cols(); }
};

PowerSpectrogram stft_power(const AudioClip& clip,
                            const StftParams& params = {});

ComplexSpectrogram stft_complex(const AudioClip& clip,
                                const StftParams& params = {});

PowerSpectrogram power_of(const ComplexSpectrogram& spec);

/// Weighted overlap-add inverse. Exact (to rounding) wherever analysis
/// windows overlap; throws for window/hop combinations whose summed squared
/// window vanishes in the interior.
AudioClip istft(const ComplexSpectrogram& spec);

/// Frame index of a placement offset: nearest frame, clamped so that
/// voc_frames rows fit inside scene_frames. SNR gain computation and dynamic
/// masks must agree on this translation.
long placement_frame_shift(double offset_s, int sample_rate,
                           const StftParams& params, long voc_frames,
                           long scene_frames);

}  // namespace synthscape
