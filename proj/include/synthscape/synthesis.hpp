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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "synthscape/audio.hpp"
#include "synthscape/pools.hpp"
#include "synthscape/rng.hpp"
#include "synthscape/stft.hpp"

namespace synthscape {

struct ContaminantPlacement {
  std::string id;
  double offset_s = 0.0;
  double gain = 1.0;
};

struct VocalPlacement {
  std::string id;
  double offset_s = 0.0;
  double target_snr = 1.0;
};

/// Everything needed to rebuild one scene, independent of the master seed.
struct SceneRecipe {
  std::string scene_id;
  uint64_t seed = 0;  // drives the gaussian noise draw
  std::string background_id;
  double crop_offset_s = 0.0;
  double gaussian_sigma = 0.0;
  std::vector<ContaminantPlacement> contaminants;
  std::vector<VocalPlacement> vocals;
  double duration_s = 10.0;
  std::optional<FreqBand> band;  // inherited from the background
};

struct DatasetConfig {
  int n = 100;
  int s = 0;  // unique vocalisations drawn from the pool; 0 = all
  double snr_lo = 0.1;
  double snr_hi = 1.0;
  std::vector<int> density_choices = {0, 1, 2};
  std::vector<int> contaminant_count_choices = {0, 1, 2};
  double sigma_lo = 0.0;
  double sigma_hi = 0.005;
  uint64_t master_seed = 0;
  double duration_s = 10.0;
  double beta = 1.0;  // dynamic-mask visibility ratio

  void validate(size_t vocal_pool_size, size_t contaminant_pool_size) const;
};

struct PlacementRecord {
  std::string voc_id;
  double offset_s = 0.0;
  double applied_gain = 0.0;
  double target_snr = 0.0;
};

struct SceneRender {
  AudioClip audio;  // final scene at kPoolLevelDbfs
  std::vector<PlacementRecord> records;
  double clip_fraction = 0.0;
  PowerSpectrogram bg_spec;  // augmented background, pre-vocalisation
};

constexpr int kSceneAttempts = 16;

/// Zero-padded scene identifier, e.g. scene_000042.
std::string make_scene_id(int scene_index);

/// The dataset's vocalisation subset: indices of the first min(s, pool)
/// entries of a master-seed-shuffled ordering.
std::vector<size_t> vocal_selection(const DatasetConfig& config,
                                    size_t pool_size);

/// True iff the vocalisation's frequency extent fits inside the background's
/// bounds (absent bounds accept everything).
bool check_band(const IsolatedVocalisation& voc, const AudioClip& bg);

/// Amplitude gain hitting a target linear-power SNR against the background
/// spectrogram over the translated source mask.
double gain_for_snr(const Grid<uint8_t>& source_mask,
                    const PowerSpectrogram& voc_power,
                    const PowerSpectrogram& bg_spec, double offset_s,
                    double target_snr);

/// Draws one scene recipe. `attempt` regenerates a rejected scene with fresh
/// randomness while keeping (config, scene_index) determinism.
SceneRecipe sample_recipe(const DatasetConfig& config, const Pools& pools,
                          const std::vector<size_t>& vocal_subset,
                          int scene_index, int attempt = 0);

/// Deterministic realization: crop, level, gaussian noise, contaminants,
/// SNR-targeted vocalisations, final normalization. Throws ConstraintError
/// when the scene must be regenerated (silent crop, clipping over 1%).
SceneRender realize_scene(const SceneRecipe& recipe, const Pools& pools);

/// Same pipeline with the gains taken from existing records (no SNR math);
/// reproduces realize_scene bit for bit.
SceneRender realize_with_gains(const SceneRecipe& recipe, const Pools& pools,
                               const std::vector<PlacementRecord>& records);

}  // namespace synthscape
