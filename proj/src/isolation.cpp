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

#include "synthscape/isolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "synthscape/error.hpp"

namespace synthscape {

namespace {

constexpr double kComponentEnergyShare = 0.001;  // 0.1% of in-mask energy

// Drops 8-connected components holding under kComponentEnergyShare of the
// total in-mask energy. Zero-energy masks are left untouched.
void prune_components(Grid<uint8_t>& mask, const Grid<double>& power) {
  const size_t rows = mask.rows();
  const size_t cols = mask.cols();
  double total = 0.0;
  for (size_t i = 0; i < mask.size(); ++i) {
    if (mask.storage()[i] != 0) total += power.storage()[i];
  }

  Grid<int> label(rows, cols, -1);
  std::vector<double> energy;
  std::vector<std::pair<size_t, size_t>> stack;
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      if (mask(r, c) == 0 || label(r, c) >= 0) continue;
      const int id = static_cast<int>(energy.size());
      energy.push_back(0.0);
      label(r, c) = id;
      stack.push_back({r, c});
      while (!stack.empty()) {
        const auto [cr, cc] = stack.back();
        stack.pop_back();
        energy[static_cast<size_t>(id)] += power(cr, cc);
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            const long nr = static_cast<long>(cr) + dr;
            const long nc = static_cast<long>(cc) + dc;
            if (nr < 0 || nc < 0 || nr >= static_cast<long>(rows) ||
                nc >= static_cast<long>(cols)) {
              continue;
            }
            const size_t ur = static_cast<size_t>(nr);
            const size_t uc = static_cast<size_t>(nc);
            if (mask(ur, uc) == 0 || label(ur, uc) >= 0) continue;
            label(ur, uc) = id;
            stack.push_back({ur, uc});
          }
        }
      }
    }
  }

  for (size_t i = 0; i < mask.size(); ++i) {
    const int id = label.storage()[i];
    if (id >= 0 &&
        energy[static_cast<size_t>(id)] < kComponentEnergyShare * total) {
      mask.storage()[i] = 0;
    }
  }
}

void check_interval(const AudioClip& clip, Interval iv, const char* what) {
  if (!(iv.t0 >= 0.0 && iv.t0 < iv.t1 && iv.t1 <= clip.duration_s() + 1e-9)) {
    throw std::invalid_argument(std::string(what) + " interval out of range");
  }
}

}  // namespace

NoiseProfile estimate_noise_profile(const AudioClip& clip, Interval interval,
                                    const StftParams& params) {
  params.validate();
  check_interval(clip, interval, "noise");
  const double sr = static_cast<double>(clip.sample_rate);
  const long s0 = static_cast<long>(std::ceil(interval.t0 * sr - 1e-9));
  const long s1 = static_cast<long>(std::floor(interval.t1 * sr + 1e-9));
  if (s1 - s0 < params.window_size) {
    throw std::invalid_argument("noise interval shorter than one window");
  }
  // Frames on the clip's own grid whose span [t*hop, t*hop + window) lies
  // fully inside [s0, s1).
  const long hop = params.hop;
  const long t_start = (s0 + hop - 1) / hop;
  const long t_end = (s1 - params.window_size) / hop;
  if (t_end < t_start) {
    throw std::invalid_argument("noise interval contains no whole frame");
  }

  AudioClip span;
  span.sample_rate = clip.sample_rate;
  span.samples.assign(
      clip.samples.begin() + t_start * hop,
      clip.samples.begin() + t_end * hop + params.window_size);
  const PowerSpectrogram spec = stft_power(span, params);

  NoiseProfile profile;
  profile.params = params;
  profile.interval = interval;
  profile.mean_power.assign(spec.num_bins(), 0.0);
  for (size_t t = 0; t < spec.num_frames(); ++t) {
    const double* row = spec.values.row(t);
    for (size_t f = 0; f < spec.num_bins(); ++f) profile.mean_power[f] += row[f];
  }
  for (double& v : profile.mean_power) {
    v /= static_cast<double>(spec.num_frames());
  }
  return profile;
}

ComplexSpectrogram spectral_subtract(const ComplexSpectrogram& spec,
                                     const NoiseProfile& profile,
                                     double over_k) {
  if (!(profile.params == spec.params) ||
      profile.mean_power.size() != spec.num_bins()) {
    throw std::invalid_argument("noise profile does not match spectrogram");
  }
  if (over_k < 0.0) throw std::invalid_argument("over_k must be non-negative");

  ComplexSpectrogram out = spec;
  for (size_t t = 0; t < out.num_frames(); ++t) {
    std::complex<double>* row = out.values.row(t);
    for (size_t f = 0; f < out.num_bins(); ++f) {
      const double power = std::norm(row[f]);
      const double reduced = power - over_k * profile.mean_power[f];
      if (reduced <= 0.0) {
        row[f] = 0.0;
      } else if (power > 0.0) {
        row[f] *= std::sqrt(reduced / power);
      }
    }
  }
  return out;
}

Grid<uint8_t> extract_mask(const PowerSpectrogram& spec, const CropBox& box,
                           double threshold_db) {
  const double span_s = spec.frame_end_s(spec.num_frames() - 1);
  if (!(box.t0 >= 0.0 && box.t0 < box.t1 && box.t1 <= span_s + 1e-9 &&
        box.f0 >= 0.0 && box.f0 < box.f1 &&
        box.f1 <= spec.nyquist() + 1e-9)) {
    throw std::invalid_argument("crop box outside spectrogram extent");
  }

  // Membership by cell center: frame center (t*hop + window/2) / sr, bin
  // center f * bin_hz.
  const double sr = static_cast<double>(spec.sample_rate);
  const double half_window = spec.params.window_size / 2.0;
  const double hop = spec.params.hop;
  const double bin_hz = spec.bin_hz();

  size_t t_lo = spec.num_frames();
  size_t t_hi = 0;
  for (size_t t = 0; t < spec.num_frames(); ++t) {
    const double center = (static_cast<double>(t) * hop + half_window) / sr;
    if (center >= box.t0 && center <= box.t1) {
      t_lo = std::min(t_lo, t);
      t_hi = std::max(t_hi, t);
    }
  }
  size_t f_lo = spec.num_bins();
  size_t f_hi = 0;
  for (size_t f = 0; f < spec.num_bins(); ++f) {
    const double center = static_cast<double>(f) * bin_hz;
    if (center >= box.f0 && center <= box.f1) {
      f_lo = std::min(f_lo, f);
      f_hi = std::max(f_hi, f);
    }
  }

  Grid<uint8_t> mask(spec.num_frames(), spec.num_bins(), 0);
  if (t_lo > t_hi || f_lo > f_hi) return mask;

  double peak = 0.0;
  for (size_t t = t_lo; t <= t_hi; ++t) {
    for (size_t f = f_lo; f <= f_hi; ++f) {
      peak = std::max(peak, spec.values(t, f));
    }
  }
  // Zero-power cells are never signal, so an all-zero crop stays empty.
  const double threshold = peak * std::pow(10.0, threshold_db / 10.0);
  for (size_t t = t_lo; t <= t_hi; ++t) {
    for (size_t f = f_lo; f <= f_hi; ++f) {
      const double v = spec.values(t, f);
      if (v > 0.0 && v >= threshold) mask(t, f) = 1;
    }
  }
  prune_components(mask, spec.values);
  return mask;
}

IsolatedVocalisation isolate(const AudioClip& clip, Interval vocal_interval,
                             Interval noise_interval, const CropBox& box,
                             double threshold_db, std::string class_label,
                             double over_k, const StftParams& params) {
  check_interval(clip, vocal_interval, "vocal");
  CropBox effective = box;
  effective.t0 = std::max(box.t0, vocal_interval.t0);
  effective.t1 = std::min(box.t1, vocal_interval.t1);
  if (!(effective.t0 < effective.t1)) {
    throw std::invalid_argument("crop box does not overlap vocal interval");
  }

  const ComplexSpectrogram full = stft_complex(clip, params);
  const NoiseProfile profile =
      estimate_noise_profile(clip, noise_interval, params);
  ComplexSpectrogram cleaned = spectral_subtract(full, profile, over_k);
  const Grid<uint8_t> mask =
      extract_mask(power_of(cleaned), effective, threshold_db);

  size_t t_lo = mask.rows();
  size_t t_hi = 0;
  size_t f_lo = mask.cols();
  size_t f_hi = 0;
  bool any = false;
  for (size_t t = 0; t < mask.rows(); ++t) {
    for (size_t f = 0; f < mask.cols(); ++f) {
      if (mask(t, f) == 0) continue;
      any = true;
      t_lo = std::min(t_lo, t);
      t_hi = std::max(t_hi, t);
      f_lo = std::min(f_lo, f);
      f_hi = std::max(f_hi, f);
    }
  }
  if (!any) {
    throw ConstraintError("isolation of '" + clip.source_id +
                          "' produced an empty mask");
  }

  for (size_t t = 0; t < cleaned.num_frames(); ++t) {
    std::complex<double>* row = cleaned.values.row(t);
    for (size_t f = 0; f < cleaned.num_bins(); ++f) {
      if (mask(t, f) == 0) row[f] = 0.0;
    }
  }
  const AudioClip rebuilt = istft(cleaned);

  const size_t hop = static_cast<size_t>(params.hop);
  const size_t begin = t_lo * hop;
  const size_t end = std::min(rebuilt.num_samples(),
                              t_hi * hop + static_cast<size_t>(params.window_size));

  IsolatedVocalisation voc;
  voc.clip.sample_rate = clip.sample_rate;
  voc.clip.source_id = clip.source_id;
  voc.clip.samples.assign(rebuilt.samples.begin() + static_cast<long>(begin),
                          rebuilt.samples.begin() + static_cast<long>(end));
  voc.params = params;
  voc.class_label = std::move(class_label);

  voc.source_mask = Grid<uint8_t>(t_hi - t_lo + 1, mask.cols(), 0);
  for (size_t t = t_lo; t <= t_hi; ++t) {
    for (size_t f = 0; f < mask.cols(); ++f) {
      voc.source_mask(t - t_lo, f) = mask(t, f);
    }
  }

  const double bin_hz =
      static_cast<double>(clip.sample_rate) / params.fft_size;
  voc.freq_extent.lo =
      std::max(0.0, (static_cast<double>(f_lo) - 0.5) * bin_hz);
  voc.freq_extent.hi = std::min(clip.sample_rate / 2.0,
                                (static_cast<double>(f_hi) + 0.5) * bin_hz);
  voc.rms_dbfs = rms_dbfs(voc.clip);
  return voc;
}

bool gate_rms(const IsolatedVocalisation& voc, double threshold_dbfs) {
  return rms_dbfs(voc.clip) >= threshold_dbfs;
}

}  // namespace synthscape
