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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "synthscape/error.hpp"
#include "synthscape/isolation.hpp"

using namespace synthscape;
using namespace synthscape::testing;

namespace {

double mask_energy_share(const PowerSpectrogram& spec,
                         const Grid<uint8_t>& mask) {
  double inside = 0.0;
  double total = 0.0;
  for (size_t t = 0; t < spec.num_frames(); ++t) {
    for (size_t f = 0; f < spec.num_bins(); ++f) {
      total += spec.values(t, f);
      if (mask(t, f) != 0) inside += spec.values(t, f);
    }
  }
  return total > 0.0 ? inside / total : 0.0;
}

AudioClip chirp(double f0, double f1, double amplitude, double duration_s) {
  AudioClip clip = make_silence(duration_s);
  const double n = static_cast<double>(clip.num_samples());
  double phase = 0.0;
  for (size_t i = 0; i < clip.num_samples(); ++i) {
    const double frac = static_cast<double>(i) / n;
    const double freq = f0 + (f1 - f0) * frac;
    phase += 2.0 * M_PI * freq / 48000.0;
    clip.samples[i] = amplitude * std::sin(phase);
  }
  return clip;
}

}  // namespace

TEST_SUITE("isolation") {

TEST_CASE("noise profile of stationary noise matches the flat expectation") {
  // Gaussian white noise: expected per-bin power is sigma^2 * sum(w^2).
  const double sigma = 0.05;
  const AudioClip noise = make_white_noise(sigma, 10.0, 48000, 91);
  const NoiseProfile profile = estimate_noise_profile(noise, {0.25, 9.75});
  REQUIRE(profile.mean_power.size() == 1025);

  const std::vector<double> w = make_window(WindowKind::kHann, 2048);
  double w2 = 0.0;
  for (double v : w) w2 += v * v;
  const double expected = sigma * sigma * w2;

  // Each entry averages ~880 overlapping frames; with the 4x frame overlap
  // that is worth ~470 independent exponential draws, so a 10% band is a
  // better than two-sigma event per bin. Ask for 95% inside plus a tight
  // bound on the overall mean.
  size_t within = 0;
  double mean = 0.0;
  for (size_t f = 1; f + 1 < profile.mean_power.size(); ++f) {
    if (std::abs(profile.mean_power[f] - expected) <= 0.1 * expected) {
      ++within;
    }
    mean += profile.mean_power[f];
  }
  mean /= static_cast<double>(profile.mean_power.size() - 2);
  CHECK(within >= (profile.mean_power.size() - 2) * 95 / 100);
  CHECK(mean == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("noise profile of silence is zero") {
  const NoiseProfile profile =
      estimate_noise_profile(make_silence(3.0), {0.0, 3.0});
  for (double p : profile.mean_power) CHECK(p == 0.0);
}

TEST_CASE("noise profile rejects a sub-window interval") {
  const AudioClip noise = make_white_noise(0.05, 3.0, 48000, 92);
  CHECK_THROWS_AS(estimate_noise_profile(noise, {1.0, 1.0 + 0.04}),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_noise_profile(noise, {2.9, 3.5}),
                  std::invalid_argument);
}

TEST_CASE("subtracting a zero profile changes nothing") {
  const AudioClip clip = make_white_noise(0.05, 2.0, 48000, 93);
  const ComplexSpectrogram spec = stft_complex(clip);
  NoiseProfile profile;
  profile.params = spec.params;
  profile.mean_power.assign(spec.num_bins(), 0.0);
  const ComplexSpectrogram out = spectral_subtract(spec, profile);
  for (size_t t = 0; t < spec.num_frames(); ++t) {
    for (size_t f = 0; f < spec.num_bins(); ++f) {
      CHECK(out.values(t, f) == spec.values(t, f));
    }
  }
}

TEST_CASE("subtracting the exact power cancels to zero") {
  // Frame-periodic noise: every frame is sample-identical, so a one-frame
  // profile equals every frame's power exactly and subtraction hits zero.
  const AudioClip noise = make_periodic_noise(0.1, 4.0);
  const ComplexSpectrogram spec = stft_complex(noise);
  const NoiseProfile profile =
      estimate_noise_profile(noise, {0.0, 2048.0 / 48000.0});
  const ComplexSpectrogram out = spectral_subtract(spec, profile, 1.0);
  for (size_t t = 0; t < out.num_frames(); ++t) {
    for (size_t f = 0; f < out.num_bins(); ++f) {
      CHECK(std::abs(out.values(t, f)) == 0.0);
    }
  }
}

TEST_CASE("subtraction keeps power non-negative and preserves phase") {
  const AudioClip clip =
      mix(make_white_noise(0.05, 2.0, 48000, 94), make_sine(2500.0, 0.2, 1.0),
          0.5, 1.0);
  const ComplexSpectrogram spec = stft_complex(clip);
  const NoiseProfile profile = estimate_noise_profile(clip, {0.0, 2.0});
  const ComplexSpectrogram out = spectral_subtract(spec, profile, 1.5);
  for (size_t t = 0; t < out.num_frames(); ++t) {
    for (size_t f = 0; f < out.num_bins(); ++f) {
      const std::complex<double> before = spec.values(t, f);
      const std::complex<double> after = out.values(t, f);
      CHECK(std::norm(after) <= std::norm(before) + 1e-12);
      if (std::abs(after) > 1e-12 && std::abs(before) > 1e-12) {
        // Phase preserved: after is a non-negative multiple of before.
        const std::complex<double> ratio = after / before;
        CHECK(std::abs(ratio.imag()) < 1e-9);
        CHECK(ratio.real() >= 0.0);
      }
    }
  }
}

TEST_CASE("subtraction raises the tone to noise contrast") {
  const double sigma = 0.05;
  const int bin = 150;
  const AudioClip clip = mix(make_white_noise(sigma, 4.0, 48000, 95),
                             make_sine(bin * 48000.0 / 2048.0, 0.05, 4.0),
                             0.0, 1.0);
  const ComplexSpectrogram spec = stft_complex(clip);
  NoiseProfile profile;
  profile.params = spec.params;
  const std::vector<double> w = make_window(WindowKind::kHann, 2048);
  double w2 = 0.0;
  for (double v : w) w2 += v * v;
  profile.mean_power.assign(spec.num_bins(), sigma * sigma * w2);
  const ComplexSpectrogram out = spectral_subtract(spec, profile);

  auto contrast = [bin](const PowerSpectrogram& p) {
    double tone = 0.0;
    double rest = 0.0;
    for (size_t t = 0; t < p.num_frames(); ++t) {
      for (size_t f = 0; f < p.num_bins(); ++f) {
        if (std::abs(static_cast<int>(f) - bin) <= 1) {
          tone += p.values(t, f);
        } else {
          rest += p.values(t, f);
        }
      }
    }
    return tone / rest;
  };
  CHECK(contrast(power_of(out)) > contrast(power_of(spec)));
}

TEST_CASE("a minus infinity threshold masks the whole crop box") {
  const PowerSpectrogram spec = stft_power(make_white_noise(0.05, 2.0, 48000, 96));
  const CropBox box{0.5, 1.5, 1000.0, 5000.0};
  const Grid<uint8_t> mask =
      extract_mask(spec, box, -std::numeric_limits<double>::infinity());
  size_t in_box = 0;
  size_t in_mask = 0;
  for (size_t t = 0; t < spec.num_frames(); ++t) {
    const double tc = (static_cast<double>(t) * 512.0 + 1024.0) / 48000.0;
    for (size_t f = 0; f < spec.num_bins(); ++f) {
      const double fc = static_cast<double>(f) * spec.bin_hz();
      const bool inside = tc >= box.t0 && tc <= box.t1 && fc >= box.f0 &&
                          fc <= box.f1;
      in_box += inside;
      in_mask += mask(t, f) != 0;
      CHECK(static_cast<bool>(mask(t, f)) == inside);
    }
  }
  CHECK(in_box == in_mask);
  CHECK(in_box > 0);
}

TEST_CASE("a single hot cell is the whole mask") {
  PowerSpectrogram spec;
  spec.params = StftParams{};
  spec.sample_rate = 48000;
  spec.values = Grid<double>(100, 1025, 0.0);
  spec.values(50, 300) = 5.0;
  const CropBox box{0.0, 1.0, 0.0, 24000.0};
  const Grid<uint8_t> mask = extract_mask(spec, box, -45.0);
  for (size_t t = 0; t < spec.num_frames(); ++t) {
    for (size_t f = 0; f < spec.num_bins(); ++f) {
      CHECK(mask(t, f) == ((t == 50 && f == 300) ? 1 : 0));
    }
  }
}

TEST_CASE("mask covers the energetic cells of a chirp") {
  const AudioClip c = chirp(2000.0, 6000.0, 0.5, 2.0);
  const PowerSpectrogram spec = stft_power(c);
  const CropBox box{0.0, spec.frame_end_s(spec.num_frames() - 1), 0.0,
                    24000.0};
  const Grid<uint8_t> mask = extract_mask(spec, box, -45.0);

  // The least set of highest-power cells holding 99% of total energy.
  std::vector<std::pair<double, size_t>> cells;
  double total = 0.0;
  for (size_t i = 0; i < spec.values.size(); ++i) {
    cells.push_back({spec.values.storage()[i], i});
    total += spec.values.storage()[i];
  }
  std::sort(cells.begin(), cells.end(), std::greater<>());
  double acc = 0.0;
  size_t covered = 0;
  size_t core_size = 0;
  for (const auto& [power, idx] : cells) {
    if (acc >= 0.99 * total) break;
    acc += power;
    ++core_size;
    covered += mask.storage()[idx] != 0;
  }
  CHECK(covered >= core_size * 95 / 100);
}

TEST_CASE("mask never grows as the threshold rises") {
  const AudioClip c = chirp(2000.0, 6000.0, 0.5, 2.0);
  const PowerSpectrogram spec = stft_power(c);
  const CropBox box{0.0, spec.frame_end_s(spec.num_frames() - 1), 0.0,
                    24000.0};
  const Grid<uint8_t> loose = extract_mask(spec, box, -45.0);
  const Grid<uint8_t> tight = extract_mask(spec, box, -20.0);
  size_t n_loose = 0;
  size_t n_tight = 0;
  for (size_t i = 0; i < loose.size(); ++i) {
    n_loose += loose.storage()[i] != 0;
    n_tight += tight.storage()[i] != 0;
    if (tight.storage()[i] != 0) CHECK(loose.storage()[i] != 0);
  }
  CHECK(n_tight > 0);
  CHECK(n_tight < n_loose);
}

TEST_CASE("extract_mask validates the crop box") {
  const PowerSpectrogram spec = stft_power(make_silence(2.0));
  CHECK_THROWS_AS(extract_mask(spec, {0.0, 3.0, 0.0, 1000.0}, -45.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(extract_mask(spec, {0.0, 1.0, 0.0, 25000.0}, -45.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(extract_mask(spec, {1.0, 0.5, 0.0, 1000.0}, -45.0),
                  std::invalid_argument);
}

TEST_CASE("isolate recovers an injected tone burst") {
  const int bin = 130;
  const double freq = bin * 48000.0 / 2048.0;
  AudioClip burst = make_sine(freq, 0.3, 1.0);
  const AudioClip noise = make_white_noise(0.01, 6.0, 48000, 97);
  const AudioClip clip = mix(noise, burst, 2.5, 1.0);

  const IsolatedVocalisation voc =
      isolate(clip, {2.3, 3.7}, {0.0, 2.0},
              {2.3, 3.7, freq - 600.0, freq + 600.0}, -45.0, "tone");
  CHECK(voc.class_label == "tone");
  CHECK(voc.clip.sample_rate == 48000);
  CHECK(voc.clip.duration_s() <= clip.duration_s());
  CHECK(voc.freq_extent.lo < freq);
  CHECK(voc.freq_extent.hi > freq);
  CHECK(voc.freq_extent.lo > freq - 700.0);
  CHECK(voc.freq_extent.hi < freq + 700.0);

  // Normalized cross-correlation against the clean burst at the best lag.
  const std::vector<double>& x = voc.clip.samples;
  const std::vector<double>& y = burst.samples;
  double best = 0.0;
  const size_t span = 4096;
  for (size_t lag = 0; lag < std::min(x.size(), span); ++lag) {
    double dot = 0.0;
    double xx = 0.0;
    double yy = 0.0;
    const size_t n = std::min(x.size() - lag, y.size());
    for (size_t i = 0; i < n; ++i) {
      dot += x[lag + i] * y[i];
      xx += x[lag + i] * x[lag + i];
      yy += y[i] * y[i];
    }
    if (xx > 0.0 && yy > 0.0) {
      best = std::max(best, dot / std::sqrt(xx * yy));
    }
  }
  CHECK(best >= 0.95);

  // Containment: the stored mask holds nearly all of the re-analysis energy.
  const PowerSpectrogram re = stft_power(voc.clip);
  REQUIRE(re.num_frames() == voc.source_mask.rows());
  REQUIRE(re.num_bins() == voc.source_mask.cols());
  CHECK(mask_energy_share(re, voc.source_mask) >= 0.95);
}

TEST_CASE("pure stationary noise is rejected for an empty mask") {
  const AudioClip noise = make_periodic_noise(0.1, 8.0, 48000, 98);
  CHECK_THROWS_AS(isolate(noise, {4.0, 6.0}, {0.0, 2048.0 / 48000.0},
                          {4.0, 6.0, 1000.0, 8000.0}, -45.0, "none"),
                  ConstraintError);
}

TEST_CASE("isolate is deterministic") {
  const AudioClip clip =
      mix(make_white_noise(0.01, 6.0, 48000, 99), make_sine(3000.0, 0.3, 1.0),
          2.5, 1.0);
  const IsolatedVocalisation a =
      isolate(clip, {2.4, 3.6}, {0.0, 2.0}, {2.4, 3.6, 2400.0, 3600.0},
              -45.0, "tone");
  const IsolatedVocalisation b =
      isolate(clip, {2.4, 3.6}, {0.0, 2.0}, {2.4, 3.6, 2400.0, 3600.0},
              -45.0, "tone");
  CHECK(a.clip.samples == b.clip.samples);
  CHECK(a.source_mask == b.source_mask);
  CHECK(a.rms_dbfs == b.rms_dbfs);
}

TEST_CASE("gate accepts at and above the threshold, inclusive") {
  IsolatedVocalisation voc;
  voc.clip = make_silence(0.1);
  voc.rms_dbfs = rms_dbfs(voc.clip);
  CHECK_FALSE(gate_rms(voc));

  voc.clip = make_sine(1000.0, 1.0, 0.1);
  voc.rms_dbfs = rms_dbfs(voc.clip);
  CHECK(gate_rms(voc, -70.0));

  // Exact boundary: measure first, then gate at the measured value.
  AudioClip faint = make_silence(0.1);
  for (double& s : faint.samples) s = 3.1622776601683794e-4;
  voc.clip = faint;
  voc.rms_dbfs = rms_dbfs(faint);
  CHECK(gate_rms(voc, voc.rms_dbfs));
}

}  // TEST_SUITE
