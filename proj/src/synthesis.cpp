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

#include "synthscape/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "synthscape/error.hpp"

namespace synthscape {

namespace {

constexpr double kContaminantGainLo = 0.25;
constexpr double kContaminantGainHi = 1.0;

bool fits_scene(const IsolatedVocalisation& voc, double duration_s) {
  return voc.clip.duration_s() <= duration_s;
}

std::vector<size_t> compatible_vocals(const Pools& pools,
                                      const std::vector<size_t>& subset,
                                      const AudioClip& bg,
                                      double duration_s) {
  std::vector<size_t> out;
  for (size_t idx : subset) {
    const IsolatedVocalisation& voc = pools.vocals[idx].voc;
    if (fits_scene(voc, duration_s) && check_band(voc, bg)) out.push_back(idx);
  }
  return out;
}

SceneRender realize_impl(const SceneRecipe& recipe, const Pools& pools,
                         const std::vector<PlacementRecord>* fixed_gains) {
  const AudioClip& bg = pools.background(recipe.background_id);
  AudioClip scene = crop(bg, recipe.crop_offset_s, recipe.duration_s);
  scene = scale_to_rms(std::move(scene), kPoolLevelDbfs);

  if (recipe.gaussian_sigma > 0.0) {
    Rng rng(recipe.seed);
    scene = add_gaussian_noise(scene, recipe.gaussian_sigma, rng);
  }
  for (const ContaminantPlacement& c : recipe.contaminants) {
    scene = mix(scene, pools.contaminant(c.id).clip, c.offset_s, c.gain);
  }

  SceneRender render;
  render.bg_spec = stft_power(scene);

  if (fixed_gains != nullptr &&
      fixed_gains->size() != recipe.vocals.size()) {
    throw std::invalid_argument("one record required per vocal placement");
  }
  for (size_t i = 0; i < recipe.vocals.size(); ++i) {
    const VocalPlacement& p = recipe.vocals[i];
    const PoolVocal& pv = pools.vocal(p.id);
    double gain;
    if (fixed_gains != nullptr) {
      if ((*fixed_gains)[i].voc_id != p.id) {
        throw std::invalid_argument("record order does not match recipe");
      }
      gain = (*fixed_gains)[i].applied_gain;
    } else {
      gain = gain_for_snr(pv.voc.source_mask, pv.power, render.bg_spec,
                          p.offset_s, p.target_snr);
    }
    scene = mix(scene, pv.voc.clip, p.offset_s, gain);
    render.records.push_back({p.id, p.offset_s, gain, p.target_snr});
  }

  NormalizeResult norm = normalize_rms(scene, kPoolLevelDbfs);
  if (norm.clipped_fraction > 0.01) {
    throw ConstraintError("scene '" + recipe.scene_id + "' clipped " +
                          std::to_string(norm.clipped_fraction * 100.0) +
                          "% of samples");
  }
  render.audio = std::move(norm.clip);
  render.audio.source_id = recipe.scene_id;
  render.clip_fraction = norm.clipped_fraction;
  return render;
}

}  // namespace

std::string make_scene_id(int scene_index) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "scene_%06d", scene_index);
  return buf;
}

void DatasetConfig::validate(size_t vocal_pool_size,
                             size_t contaminant_pool_size) const {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!(snr_lo > 0.0 && snr_lo <= snr_hi)) {
    throw std::invalid_argument("need 0 < snr_lo <= snr_hi");
  }
  if (density_choices.empty()) {
    throw std::invalid_argument("density_choices must not be empty");
  }
  bool wants_vocals = false;
  for (int d : density_choices) {
    if (d < 0 || d > 2) {
      throw std::invalid_argument("density choices must lie in [0, 2]");
    }
    wants_vocals = wants_vocals || d > 0;
  }
  if (contaminant_count_choices.empty()) {
    throw std::invalid_argument("contaminant_count_choices must not be empty");
  }
  bool wants_contaminants = false;
  for (int c : contaminant_count_choices) {
    if (c < 0) throw std::invalid_argument("contaminant counts must be >= 0");
    wants_contaminants = wants_contaminants || c > 0;
  }
  if (!(sigma_lo >= 0.0 && sigma_lo <= sigma_hi)) {
    throw std::invalid_argument("need 0 <= sigma_lo <= sigma_hi");
  }
  if (duration_s <= 0.0) throw std::invalid_argument("duration must be > 0");
  if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
  if (s < 0) throw std::invalid_argument("s must be >= 0");
  if (s > static_cast<int>(vocal_pool_size)) {
    throw std::invalid_argument("s exceeds the vocalisation pool size");
  }
  if (wants_vocals && vocal_pool_size == 0) {
    throw std::invalid_argument("vocalisation pool is empty");
  }
  if (wants_contaminants && contaminant_pool_size == 0) {
    throw std::invalid_argument("contaminant pool is empty");
  }
}

std::vector<size_t> vocal_selection(const DatasetConfig& config,
                                    size_t pool_size) {
  std::vector<size_t> order(pool_size);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(hash_combine(config.master_seed, hash_str("voc-order")));
  for (size_t i = pool_size; i > 1; --i) {
    const size_t j = rng.uniform_index(i);
    std::swap(order[i - 1], order[j]);
  }
  const size_t keep = (config.s == 0)
                          ? pool_size
                          : std::min(pool_size, static_cast<size_t>(config.s));
  order.resize(keep);
  return order;
}

bool check_band(const IsolatedVocalisation& voc, const AudioClip& bg) {
  if (!bg.freq_bounds.has_value()) return true;
  return bg.freq_bounds->contains(voc.freq_extent);
}

double gain_for_snr(const Grid<uint8_t>& source_mask,
                    const PowerSpectrogram& voc_power,
                    const PowerSpectrogram& bg_spec, double offset_s,
                    double target_snr) {
  if (source_mask.rows() != voc_power.num_frames() ||
      source_mask.cols() != voc_power.num_bins()) {
    throw std::invalid_argument("source mask does not match its spectrogram");
  }
  if (source_mask.cols() != bg_spec.num_bins()) {
    throw std::invalid_argument("vocalisation and scene bin counts differ");
  }
  if (target_snr <= 0.0) {
    throw std::invalid_argument("target snr must be positive");
  }
  const long voc_frames = static_cast<long>(source_mask.rows());
  const long scene_frames = static_cast<long>(bg_spec.num_frames());
  if (voc_frames > scene_frames) {
    throw std::invalid_argument("vocalisation is longer than the scene");
  }
  const long shift =
      placement_frame_shift(offset_s, bg_spec.sample_rate, bg_spec.params,
                            voc_frames, scene_frames);

  double p_sig = 0.0;
  double p_bg = 0.0;
  for (long u = 0; u < voc_frames; ++u) {
    const uint8_t* m = source_mask.row(static_cast<size_t>(u));
    const double* pv = voc_power.values.row(static_cast<size_t>(u));
    const double* pb = bg_spec.values.row(static_cast<size_t>(shift + u));
    for (size_t f = 0; f < source_mask.cols(); ++f) {
      if (m[f] == 0) continue;
      p_sig += pv[f];
      p_bg += pb[f];
    }
  }
  if (p_sig <= 0.0) {
    throw std::invalid_argument("vocalisation has zero mask power");
  }
  if (p_bg <= 0.0) {
    throw ConstraintError("background mask-region power is zero");
  }
  return std::sqrt(target_snr * p_bg / p_sig);
}

SceneRecipe sample_recipe(const DatasetConfig& config, const Pools& pools,
                          const std::vector<size_t>& vocal_subset,
                          int scene_index, int attempt) {
  Rng rng(hash_combine(hash_combine(config.master_seed,
                                    static_cast<uint64_t>(scene_index)),
                       static_cast<uint64_t>(attempt)));
  SceneRecipe recipe;
  recipe.scene_id = make_scene_id(scene_index);
  recipe.duration_s = config.duration_s;
  recipe.seed = rng.next_u64();

  bool wants_vocals = false;
  for (int d : config.density_choices) wants_vocals = wants_vocals || d > 0;

  const AudioClip* bg = nullptr;
  std::vector<size_t> compatible;
  for (int tries = 0; tries < kSceneAttempts; ++tries) {
    const size_t idx = rng.uniform_index(pools.backgrounds.size());
    const AudioClip& candidate = pools.backgrounds[idx];
    compatible = compatible_vocals(pools, vocal_subset, candidate,
                                   config.duration_s);
    if (!wants_vocals || !compatible.empty()) {
      bg = &candidate;
      break;
    }
  }
  if (bg == nullptr) {
    throw ConstraintError(
        "no background is band-compatible with the selected vocalisations");
  }
  recipe.background_id = bg->source_id;
  recipe.band = bg->freq_bounds;
  recipe.crop_offset_s =
      rng.uniform(0.0, std::max(0.0, bg->duration_s() - config.duration_s));
  recipe.gaussian_sigma = rng.uniform(config.sigma_lo, config.sigma_hi);

  const int n_cont = config.contaminant_count_choices[rng.uniform_index(
      config.contaminant_count_choices.size())];
  for (int i = 0; i < n_cont; ++i) {
    const Contaminant& c =
        pools.contaminants[rng.uniform_index(pools.contaminants.size())];
    ContaminantPlacement p;
    p.id = c.id;
    p.offset_s =
        rng.uniform(0.0, std::max(0.0, config.duration_s - c.clip.duration_s()));
    p.gain = rng.uniform(kContaminantGainLo, kContaminantGainHi);
    recipe.contaminants.push_back(std::move(p));
  }

  const int n_voc = config.density_choices[rng.uniform_index(
      config.density_choices.size())];
  for (int i = 0; i < n_voc; ++i) {
    const PoolVocal& pv =
        pools.vocals[compatible[rng.uniform_index(compatible.size())]];
    VocalPlacement p;
    p.id = pv.id;
    p.offset_s = rng.uniform(
        0.0, std::max(0.0, config.duration_s - pv.voc.clip.duration_s()));
    p.target_snr = rng.uniform(config.snr_lo, config.snr_hi);
    recipe.vocals.push_back(std::move(p));
  }
  return recipe;
}

SceneRender realize_scene(const SceneRecipe& recipe, const Pools& pools) {
  return realize_impl(recipe, pools, nullptr);
}

SceneRender realize_with_gains(const SceneRecipe& recipe, const Pools& pools,
                               const std::vector<PlacementRecord>& records) {
  return realize_impl(recipe, pools, &records);
}

}  // namespace synthscape
