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

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "synthscape/audio.hpp"
#include "synthscape/isolation.hpp"
#include "synthscape/labelling.hpp"
#include "synthscape/metrics.hpp"
#include "synthscape/pools.hpp"
#include "synthscape/rng.hpp"
#include "synthscape/stft.hpp"

namespace synthscape::testing {

inline AudioClip make_sine(double freq_hz, double amplitude,
                           double duration_s, int sample_rate = 48000,
                           double phase = 0.0) {
  AudioClip clip;
  clip.sample_rate = sample_rate;
  const size_t n = static_cast<size_t>(std::llround(duration_s * sample_rate));
  clip.samples.resize(n);
  const double w = 2.0 * M_PI * freq_hz / sample_rate;
  for (size_t i = 0; i < n; ++i) {
    clip.samples[i] = amplitude * std::sin(w * static_cast<double>(i) + phase);
  }
  return clip;
}

inline AudioClip make_silence(double duration_s, int sample_rate = 48000) {
  AudioClip clip;
  clip.sample_rate = sample_rate;
  clip.samples.assign(
      static_cast<size_t>(std::llround(duration_s * sample_rate)), 0.0);
  return clip;
}

inline AudioClip make_white_noise(double sigma, double duration_s,
                                  int sample_rate = 48000, uint64_t seed = 1) {
  AudioClip clip = make_silence(duration_s, sample_rate);
  Rng rng(seed);
  for (double& s : clip.samples) s = sigma * rng.gaussian();
  return clip;
}

/// Noise whose period divides the STFT hop, so every analysis frame sees an
/// identical sample pattern: the spectrogram is exactly frame-stationary.
inline AudioClip make_periodic_noise(double amplitude, double duration_s,
                                     int sample_rate = 48000,
                                     uint64_t seed = 7,
                                     int period = 512) {
  std::vector<double> block(static_cast<size_t>(period));
  Rng rng(seed);
  for (double& s : block) s = amplitude * rng.gaussian();
  AudioClip clip = make_silence(duration_s, sample_rate);
  for (size_t i = 0; i < clip.samples.size(); ++i) {
    clip.samples[i] = block[i % block.size()];
  }
  return clip;
}

/// Unique scratch directory, removed (recursively) on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<uint64_t> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("synthscape_" + tag + "_" +
             std::to_string(counter.fetch_add(1)) + "_" +
             std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

/// Builds a vocalisation directly from a clip: the source mask is every cell
/// within 45 dB of the spectrogram's peak.
inline IsolatedVocalisation make_vocal_from_clip(AudioClip clip,
                                                 const std::string& label,
                                                 const std::string& id) {
  clip.source_id = id;
  IsolatedVocalisation voc;
  voc.params = StftParams{};
  const PowerSpectrogram spec = stft_power(clip, voc.params);
  const CropBox box{0.0, spec.frame_end_s(spec.num_frames() - 1), 0.0,
                    spec.nyquist()};
  voc.source_mask = extract_mask(spec, box);
  size_t f_lo = spec.num_bins();
  size_t f_hi = 0;
  for (size_t t = 0; t < voc.source_mask.rows(); ++t) {
    for (size_t f = 0; f < voc.source_mask.cols(); ++f) {
      if (voc.source_mask(t, f) == 0) continue;
      f_lo = std::min(f_lo, f);
      f_hi = std::max(f_hi, f);
    }
  }
  voc.freq_extent.lo =
      std::max(0.0, (static_cast<double>(f_lo) - 0.5) * spec.bin_hz());
  voc.freq_extent.hi = std::min(
      spec.nyquist(), (static_cast<double>(f_hi) + 0.5) * spec.bin_hz());
  voc.class_label = label;
  voc.rms_dbfs = rms_dbfs(clip);
  voc.clip = std::move(clip);
  return voc;
}

/// A tone burst vocalisation at a bin-centered frequency.
inline IsolatedVocalisation make_tone_vocal(int bin, double amplitude,
                                            double duration_s,
                                            const std::string& label,
                                            const std::string& id) {
  const double freq = static_cast<double>(bin) * 48000.0 / 2048.0;
  return make_vocal_from_clip(make_sine(freq, amplitude, duration_s), label,
                              id);
}

/// Self-contained source pools over synthetic audio: white-noise backgrounds,
/// tone vocalisations at distinct bins, and short tone contaminants.
inline Pools make_test_pools(size_t n_backgrounds = 2, size_t n_vocals = 4,
                             size_t n_contaminants = 2,
                             double bg_duration_s = 12.0,
                             uint64_t seed = 100) {
  Pools pools;
  for (size_t i = 0; i < n_backgrounds; ++i) {
    AudioClip bg = make_white_noise(0.05, bg_duration_s, 48000, seed + i);
    bg.source_id = "bg" + std::to_string(i);
    pools.backgrounds.push_back(std::move(bg));
  }
  for (size_t i = 0; i < n_vocals; ++i) {
    const int bin = 80 + static_cast<int>(i) * 40;
    IsolatedVocalisation voc =
        make_tone_vocal(bin, 0.4, 0.8, "sono_a", "voc" + std::to_string(i));
    pools.vocals.push_back(
        make_pool_vocal("voc" + std::to_string(i), std::move(voc)));
  }
  for (size_t i = 0; i < n_contaminants; ++i) {
    AudioClip c = make_sine(3000.0 + 500.0 * static_cast<double>(i), 0.3, 1.5);
    c.source_id = "cont" + std::to_string(i);
    c = scale_to_rms(std::move(c), kPoolLevelDbfs);
    pools.contaminants.push_back({"cont" + std::to_string(i), std::move(c)});
  }
  return pools;
}

/// O(n_pos * n_neg) reference AUC: fraction of (positive, negative) pairs
/// ranked correctly, ties counted one half.
inline double brute_force_auc(const std::vector<ScoredExample>& examples) {
  double wins = 0.0;
  size_t pairs = 0;
  for (const ScoredExample& p : examples) {
    if (p.label != 1) continue;
    for (const ScoredExample& n : examples) {
      if (n.label != 0) continue;
      ++pairs;
      if (p.score > n.score) {
        wins += 1.0;
      } else if (p.score == n.score) {
        wins += 0.5;
      }
    }
  }
  return wins / static_cast<double>(pairs);
}

/// Reference merge: scan every pair in every pass until no pass merges,
/// ignoring id order (hulls only grow, so the fixpoint is order-free).
inline std::vector<Annotation> brute_force_merge(
    std::vector<Annotation> anns, double iou_thresh = kDefaultIouThresh,
    double irs_thresh = kDefaultIrsThresh) {
  auto hull = [](const BBox& a, const BBox& b) {
    BBox h;
    h.t0 = std::min(a.t0, b.t0);
    h.t1 = std::max(a.t1, b.t1);
    h.f0 = std::min(a.f0, b.f0);
    h.f1 = std::max(a.f1, b.f1);
    h.x0 = std::min(a.x0, b.x0);
    h.x1 = std::max(a.x1, b.x1);
    h.y0 = std::min(a.y0, b.y0);
    h.y1 = std::max(a.y1, b.y1);
    return h;
  };
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t i = 0; i < anns.size() && !merged; ++i) {
      for (size_t j = i + 1; j < anns.size() && !merged; ++j) {
        if (anns[i].class_label != anns[j].class_label) continue;
        if (!(iou(anns[i].bbox, anns[j].bbox) > iou_thresh ||
              irs(anns[i].bbox, anns[j].bbox) > irs_thresh)) {
          continue;
        }
        Annotation& keep = anns[i].id < anns[j].id ? anns[i] : anns[j];
        Annotation& gone = anns[i].id < anns[j].id ? anns[j] : anns[i];
        keep.bbox = hull(keep.bbox, gone.bbox);
        std::vector<int> ids;
        auto add_ids = [&ids](const Annotation& a) {
          if (a.merged_from.empty()) {
            ids.push_back(a.id);
          } else {
            ids.insert(ids.end(), a.merged_from.begin(), a.merged_from.end());
          }
        };
        add_ids(keep);
        add_ids(gone);
        std::sort(ids.begin(), ids.end());
        keep.merged_from = std::move(ids);
        anns.erase(anns.begin() + static_cast<long>(&gone - anns.data()));
        merged = true;
      }
    }
  }
  std::sort(anns.begin(), anns.end(),
            [](const Annotation& a, const Annotation& b) { return a.id < b.id; });
  return anns;
}

}  // namespace synthscape::testing
