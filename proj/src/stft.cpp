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

#include "synthscape/stft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace synthscape {

namespace {

// FFTW plan creation is not thread-safe; execution on private buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class RealFft {
 public:
  explicit RealFft(int n) : n_(n) {
    real_ = fftw_alloc_real(n);
    cplx_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_r2c_1d(n, real_, cplx_, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_c2r_1d(n, cplx_, real_, FFTW_ESTIMATE);
  }

  ~RealFft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
    fftw_free(real_);
    fftw_free(cplx_);
  }

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  void forward(const double* in, std::complex<double>* out) {
    std::memcpy(real_, in, sizeof(double) * n_);
    fftw_execute(fwd_);
    std::memcpy(out, cplx_, sizeof(fftw_complex) * (n_ / 2 + 1));
  }

  /// Inverse transform scaled by 1/n.
  void inverse(const std::complex<double>* in, double* out) {
    std::memcpy(cplx_, in, sizeof(fftw_complex) * (n_ / 2 + 1));
    fftw_execute(inv_);
    const double scale = 1.0 / n_;
    for (int i = 0; i < n_; ++i) out[i] = real_[i] * scale;
  }

 private:
  int n_;
  double* real_;
  fftw_complex* cplx_;
  fftw_plan fwd_;
  fftw_plan inv_;
};

RealFft& fft_for(int n) {
  thread_local std::unordered_map<int, std::unique_ptr<RealFft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealFft>(n);
  return *slot;
}

}  // namespace

std::string window_name(WindowKind kind) {
  switch (kind) {
    case WindowKind::kHann:
      return "hann";
    case WindowKind::kHamming:
      return "hamming";
    case WindowKind::kRect:
      return "rect";
  }
  return "hann";
}

WindowKind window_from_name(const std::string& name) {
  if (name == "hann") return WindowKind::kHann;
  if (name == "hamming") return WindowKind::kHamming;
  if (name == "rect") return WindowKind::kRect;
  throw std::invalid_argument("unknown window kind: " + name);
}

void StftParams::validate() const {
  if (fft_size <= 0 || window_size <= 0 || hop <= 0) {
    throw std::invalid_argument("StftParams: sizes must be positive");
  }
  if (fft_size < window_size) {
    throw std::invalid_argument("StftParams: fft_size < window_size");
  }
  if (hop > window_size) {
    throw std::invalid_argument("StftParams: hop > window_size");
  }
}

size_t num_stft_frames(size_t num_samples, const StftParams& params) {
  params.validate();
  if (num_samples < static_cast<size_t>(params.window_size)) {
    throw std::invalid_argument("stft: clip shorter than one window");
  }
  return 1 + (num_samples - params.window_size) / params.hop;
}

std::vector<double> make_window(WindowKind kind, int window_size) {
  std::vector<double> w(window_size);
  switch (kind) {
    case WindowKind::kHann:
      for (int n = 0; n < window_size; ++n) {
        w[n] = 0.5 - 0.5 * std::cos(2.0 * M_PI * n / window_size);
      }
      break;
    case WindowKind::kHamming:
      for (int n = 0; n < window_size; ++n) {
        w[n] = 0.54 - 0.46 * std::cos(2.0 * M_PI * n / window_size);
      }
      break;
    case WindowKind::kRect:
      std::fill(w.begin(), w.end(), 1.0);
      break;
  }
  return w;
}

ComplexSpectrogram stft_complex(const AudioClip& clip,
                                const StftParams& params) {
  const size_t frames = num_stft_frames(clip.samples.size(), params);
  const size_t bins = static_cast<size_t>(params.num_bins());
  const std::vector<double> w = make_window(params.window, params.window_size);

  ComplexSpectrogram out;
  out.params = params;
  out.sample_rate = clip.sample_rate;
  out.num_samples = clip.samples.size();
  out.values = Grid<std::complex<double>>(frames, bins);

  RealFft& fft = fft_for(params.fft_size);
  std::vector<double> frame(params.fft_size, 0.0);
  for (size_t t = 0; t < frames; ++t) {
    const double* src = clip.samples.data() + t * params.hop;
    for (int n = 0; n < params.window_size; ++n) frame[n] = src[n] * w[n];
    fft.forward(frame.data(), out.values.row(t));
  }
  return out;
}

PowerSpectrogram stft_power(const AudioClip& clip, const StftParams& params) {
  const size_t frames = num_stft_frames(clip.samples.size(), params);
  const size_t bins = static_cast<size_t>(params.num_bins());
  const std::vector<double> w = make_window(params.window, params.window_size);

  PowerSpectrogram out;
  out.params = params;
  out.sample_rate = clip.sample_rate;
  out.values = Grid<double>(frames, bins);

  RealFft& fft = fft_for(params.fft_size);
  std::vector<double> frame(params.fft_size, 0.0);
  std::vector<std::complex<double>> coeffs(bins);
  for (size_t t = 0; t < frames; ++t) {
    const double* src = clip.samples.data() + t * params.hop;
    for (int n = 0; n < params.window_size; ++n) frame[n] = src[n] * w[n];
    fft.forward(frame.data(), coeffs.data());
    double* row = out.values.row(t);
    for (size_t k = 0; k < bins; ++k) row[k] = std::norm(coeffs[k]);
  }
  return out;
}

PowerSpectrogram power_of(const ComplexSpectrogram& spec) {
  PowerSpectrogram out;
  out.params = spec.params;
  out.sample_rate = spec.sample_rate;
  out.values = Grid<double>(spec.values.rows(), spec.values.cols());
  for (size_t i = 0; i < spec.values.size(); ++i) {
    out.values.data()[i] = std::norm(spec.values.data()[i]);
  }
  return out;
}

AudioClip istft(const ComplexSpectrogram& spec) {
  const StftParams& p = spec.params;
  p.validate();
  if (spec.values.cols() != static_cast<size_t>(p.num_bins())) {
    throw std::invalid_argument("istft: bin count does not match params");
  }
  const size_t frames = spec.values.rows();
  if (frames == 0) throw std::invalid_argument("istft: empty spectrogram");

  const std::vector<double> w = make_window(p.window, p.window_size);
  const size_t coverage = (frames - 1) * p.hop + p.window_size;

  std::vector<double> acc(coverage, 0.0);
  std::vector<double> wsum(coverage, 0.0);

  RealFft& fft = fft_for(p.fft_size);
  std::vector<double> frame(p.fft_size);
  for (size_t t = 0; t < frames; ++t) {
    fft.inverse(spec.values.row(t), frame.data());
    const size_t base = t * p.hop;
    for (int n = 0; n < p.window_size; ++n) {
      acc[base + n] += w[n] * frame[n];
      wsum[base + n] += w[n] * w[n];
    }
  }

  // The combination is reconstructible when the summed squared window stays
  // bounded away from zero over the interior (first/last window excluded).
  if (coverage > 2 * static_cast<size_t>(p.window_size)) {
    for (size_t i = p.window_size; i + p.window_size < coverage; ++i) {
      if (wsum[i] < 1e-9) {
        throw std::invalid_argument(
            "istft: window/hop combination is not reconstructible");
      }
    }
  }

  AudioClip out;
  out.sample_rate = spec.sample_rate;
  const size_t out_len = spec.num_samples > 0 ? spec.num_samples : coverage;
  out.samples.assign(out_len, 0.0);
  const size_t n = std::min(out_len, coverage);
  for (size_t i = 0; i < n; ++i) {
    out.samples[i] = wsum[i] > 1e-12 ? acc[i] / wsum[i] : 0.0;
  }
  return out;
}

long placement_frame_shift(double offset_s, int sample_rate,
                           const StftParams& params, long voc_frames,
                           long scene_frames) {
  const double sr = static_cast<double>(sample_rate);
  const long shift = std::llround(offset_s * sr / params.hop);
  return std::clamp(shift, 0L, std::max(0L, scene_frames - voc_frames));
}

}  // namespace synthscape
