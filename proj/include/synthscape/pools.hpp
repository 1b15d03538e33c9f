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

#include <filesystem>
#include <string>
#include <vector>

#include "synthscape/audio.hpp"
#include "synthscape/isolation.hpp"
#include "synthscape/stft.hpp"

namespace synthscape {

constexpr int kSceneSampleRate = 48000;
constexpr double kPoolLevelDbfs = -10.0;

/// A pool vocalisation with the per-entry caches that synthesis reuses:
/// its power spectrogram and the summed power inside the source mask.
struct PoolVocal {
  std::string id;
  IsolatedVocalisation voc;
  PowerSpectrogram power;
  double mask_power = 0.0;
};

struct Contaminant {
  std::string id;
  AudioClip clip;  // held at kPoolLevelDbfs
};

struct Pools {
  std::vector<AudioClip> backgrounds;  // source_id is the catalog id
  std::vector<PoolVocal> vocals;
  std::vector<Contaminant> contaminants;

  const AudioClip& background(const std::string& id) const;
  const PoolVocal& vocal(const std::string& id) const;
  const Contaminant& contaminant(const std::string& id) const;

  /// Checks the pools against a scene duration: backgrounds must cover it,
  /// contaminants must fit inside it.
  void validate_for(double duration_s) const;
};

/// Catalog of raw background recordings: JSON with entries carrying id,
/// audio path (relative to the catalog file) and optional f_lo/f_hi bounds.
std::vector<AudioClip> load_backgrounds(const std::filesystem::path& catalog);

/// Vocalisation pool directory: pool.json plus per-entry WAV files. Loading
/// rebuilds the spectrogram caches and validates mask dimensions.
std::vector<PoolVocal> load_vocal_pool(const std::filesystem::path& dir);
void save_vocal_pool(const std::vector<IsolatedVocalisation>& vocals,
                     const std::vector<std::string>& ids,
                     const std::filesystem::path& dir);

/// Contaminant pool directory: pool.json plus WAV files; clips are leveled
/// to kPoolLevelDbfs on load.
std::vector<Contaminant> load_contaminant_pool(
    const std::filesystem::path& dir);

/// Resamples to the scene rate when needed.
AudioClip to_scene_rate(AudioClip clip);

/// Pure level alignment (no clipping, unlike normalize_rms).
AudioClip scale_to_rms(AudioClip clip, double target_dbfs);

PoolVocal make_pool_vocal(std::string id, IsolatedVocalisation voc);

}  // namespace synthscape
