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

#include <algorithm>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "synthscape/error.hpp"
#include "synthscape/synthesis.hpp"

using namespace synthscape;
using namespace synthscape::testing;

namespace {

bool same_recipe(const SceneRecipe& a, const SceneRecipe& b) {
  if (a.scene_id != b.scene_id || a.seed != b.seed ||
      a.background_id != b.background_id ||
      a.crop_offset_s != b.crop_offset_s ||
      a.gaussian_sigma != b.gaussian_sigma ||
      a.contaminants.size() != b.contaminants.size() ||
      a.vocals.size() != b.vocals.size()) {
    return false;
  }
  for (size_t i = 0; i < a.contaminants.size(); ++i) {
    if (a.contaminants[i].id != b.contaminants[i].id ||
        a.contaminants[i].offset_s != b.contaminants[i].offset_s ||
        a.contaminants[i].gain != b.contaminants[i].gain) {
      return false;
    }
  }
  for (size_t i = 0; i < a.vocals.size(); ++i) {
    if (a.vocals[i].id != b.vocals[i].id ||
        a.vocals[i].offset_s != b.vocals[i].offset_s ||
        a.vocals[i].target_snr != b.vocals[i].target_snr) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("synthesis") {

TEST_CASE("scene ids are zero padded") {
  CHECK(make_scene_id(0) == "scene_000000");
  CHECK(make_scene_id(42) == "scene_000042");
  CHECK(make_scene_id(123456) == "scene_123456");
}

TEST_CASE("config validation rejects bad fields") {
  DatasetConfig config;
  config.validate(4, 2);

  DatasetConfig bad = config;
  bad.n = 0;
  CHECK_THROWS_AS(bad.validate(4, 2), std::invalid_argument);
  bad = config;
  bad.snr_lo = 0.0;
  CHECK_THROWS_AS(bad.validate(4, 2), std::invalid_argument);
  bad = config;
  bad.snr_lo = 2.0;
  bad.snr_hi = 1.0;
  CHECK_THROWS_AS(bad.validate(4, 2), std::invalid_argument);
  bad = config;
  bad.density_choices = {};
  CHECK_THROWS_AS(bad.validate(4, 2), std::invalid_argument);
  bad = config;
  bad.density_choices = {3};
  CHECK_THROWS_AS(bad.validate(4, 2), std::invalid_argument);
  bad = config;
  bad.s = 5;
  CHECK_THROWS_AS(bad.validate(4, 2), std::invalid_argument);
  bad = config;
  bad.sigma_lo = 0.1;
  bad.sigma_hi = 0.05;
  CHECK_THROWS_AS(bad.validate(4, 2), std::invalid_argument);
  bad = config;
  CHECK_THROWS_AS(bad.validate(0, 2), std::invalid_argument);
  bad.density_choices = {0};
  bad.contaminant_count_choices = {0};
  bad.validate(0, 0);  // nothing drawn from the empty pools
}

TEST_CASE("vocal selection is a seeded prefix of a permutation") {
  DatasetConfig config;
  config.master_seed = 99;
  config.s = 0;
  const std::vector<size_t> all = vocal_selection(config, 8);
  REQUIRE(all.size() == 8);
  std::set<size_t> seen(all.begin(), all.end());
  CHECK(seen.size() == 8);
  CHECK(*seen.begin() == 0);
  CHECK(*seen.rbegin() == 7);

  config.s = 3;
  const std::vector<size_t> three = vocal_selection(config, 8);
  REQUIRE(three.size() == 3);
  CHECK(std::equal(three.begin(), three.end(), all.begin()));

  CHECK(vocal_selection(config, 8) == three);

  DatasetConfig other = config;
  other.master_seed = 100;
  const std::vector<size_t> moved = vocal_selection(other, 8);
  REQUIRE(moved.size() == 3);
}

TEST_CASE("band check compares the extent against the bounds") {
  IsolatedVocalisation voc;
  voc.freq_extent = {2000.0, 3000.0};
  AudioClip bg;
  CHECK(check_band(voc, bg));

  bg.freq_bounds = FreqBand{1000.0, 5000.0};
  CHECK(check_band(voc, bg));

  voc.freq_extent = {500.0, 3000.0};
  CHECK_FALSE(check_band(voc, bg));
  voc.freq_extent = {2000.0, 5001.0};
  CHECK_FALSE(check_band(voc, bg));
}

TEST_CASE("gain hits the target snr on a constant background") {
  Grid<uint8_t> mask(4, 8, 0);
  PowerSpectrogram voc;
  voc.params = StftParams{};
  voc.sample_rate = 48000;
  voc.values = Grid<double>(4, 8, 0.0);
  double p_sig = 0.0;
  Rng rng(5);
  for (size_t t = 0; t < 4; ++t) {
    for (size_t f = 2; f < 7; ++f) {
      mask(t, f) = 1;
      voc.values(t, f) = rng.uniform(0.5, 2.0);
      p_sig += voc.values(t, f);
    }
  }
  const size_t cells = 4 * 5;
  PowerSpectrogram bg;
  bg.params = StftParams{};
  bg.sample_rate = 48000;
  bg.values = Grid<double>(40, 8, p_sig / static_cast<double>(cells));

  CHECK(gain_for_snr(mask, voc, bg, 0.0, 1.0) == doctest::Approx(1.0));
  CHECK(gain_for_snr(mask, voc, bg, 0.0, 0.25) == doctest::Approx(0.5));

  // Doubling the background power scales the gain by sqrt(2).
  PowerSpectrogram loud = bg;
  for (double& v : loud.values.storage()) v *= 2.0;
  CHECK(gain_for_snr(mask, voc, loud, 0.0, 1.0) ==
        doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(gain_for_snr(mask, voc, bg, 0.0, 0.0),
                  std::invalid_argument);
  PowerSpectrogram silent = bg;
  for (double& v : silent.values.storage()) v = 0.0;
  CHECK_THROWS_AS(gain_for_snr(mask, voc, silent, 0.0, 1.0), ConstraintError);
}

TEST_CASE("recipes honour the density and snr ranges") {
  const Pools pools = make_test_pools();
  const std::vector<size_t> subset{0, 1, 2, 3};

  DatasetConfig config;
  config.density_choices = {0};
  for (int i = 0; i < 10; ++i) {
    CHECK(sample_recipe(config, pools, subset, i).vocals.empty());
  }

  config.density_choices = {2};
  config.contaminant_count_choices = {0};
  config.snr_lo = config.snr_hi = 1.0;
  for (int i = 0; i < 10; ++i) {
    const SceneRecipe recipe = sample_recipe(config, pools, subset, i);
    REQUIRE(recipe.vocals.size() == 2);
    CHECK(recipe.contaminants.empty());
    for (const VocalPlacement& p : recipe.vocals) {
      CHECK(p.target_snr == 1.0);
    }
  }

  config.snr_lo = 0.1;
  config.snr_hi = 0.5;
  config.contaminant_count_choices = {0, 1, 2};
  for (int i = 0; i < 50; ++i) {
    const SceneRecipe recipe = sample_recipe(config, pools, subset, i);
    for (const VocalPlacement& p : recipe.vocals) {
      CHECK(p.target_snr >= 0.1);
      CHECK(p.target_snr <= 0.5);
      const double dur = pools.vocal(p.id).voc.clip.duration_s();
      CHECK(p.offset_s >= 0.0);
      CHECK(p.offset_s + dur <= config.duration_s + 1e-9);
    }
    for (const ContaminantPlacement& c : recipe.contaminants) {
      CHECK(c.gain >= 0.25);
      CHECK(c.gain <= 1.0);
      const double dur = pools.contaminant(c.id).clip.duration_s();
      CHECK(c.offset_s >= 0.0);
      CHECK(c.offset_s + dur <= config.duration_s + 1e-9);
    }
    CHECK(recipe.crop_offset_s >= 0.0);
    CHECK(recipe.crop_offset_s + config.duration_s <= 12.0 + 1e-9);
  }
}

TEST_CASE("recipes are deterministic per scene and fresh per attempt") {
  const Pools pools = make_test_pools();
  const std::vector<size_t> subset{0, 1, 2, 3};
  DatasetConfig config;
  config.master_seed = 7;

  const SceneRecipe a = sample_recipe(config, pools, subset, 3);
  const SceneRecipe b = sample_recipe(config, pools, subset, 3);
  CHECK(same_recipe(a, b));
  CHECK(a.scene_id == "scene_000003");

  const SceneRecipe retry = sample_recipe(config, pools, subset, 3, 1);
  CHECK(retry.scene_id == a.scene_id);
  CHECK(retry.seed != a.seed);

  const SceneRecipe other = sample_recipe(config, pools, subset, 4);
  CHECK(other.scene_id == "scene_000004");
}

TEST_CASE("recipes only place band-compatible vocalisations") {
  Pools pools = make_test_pools();
  // Tones sit at 1875, 2812.5, 3750 and 4687.5 Hz; these bounds leave only
  // the first two in play.
  for (AudioClip& bg : pools.backgrounds) {
    bg.freq_bounds = FreqBand{1000.0, 3200.0};
  }
  DatasetConfig config;
  config.density_choices = {2};
  const std::vector<size_t> subset{0, 1, 2, 3};
  for (int i = 0; i < 30; ++i) {
    const SceneRecipe recipe = sample_recipe(config, pools, subset, i);
    for (const VocalPlacement& p : recipe.vocals) {
      CHECK((p.id == "voc0" || p.id == "voc1"));
    }
  }

  for (AudioClip& bg : pools.backgrounds) {
    bg.freq_bounds = FreqBand{20000.0, 24000.0};
  }
  CHECK_THROWS_AS(sample_recipe(config, pools, subset, 0), ConstraintError);
}

TEST_CASE("an empty recipe reduces to the levelled crop") {
  const Pools pools = make_test_pools();
  SceneRecipe recipe;
  recipe.scene_id = "scene_test";
  recipe.seed = 1;
  recipe.background_id = "bg0";
  recipe.crop_offset_s = 0.5;

  const SceneRender render = realize_scene(recipe, pools);
  AudioClip expected = scale_to_rms(
      crop(pools.background("bg0"), 0.5, 10.0), kPoolLevelDbfs);
  expected = normalize_rms(std::move(expected), kPoolLevelDbfs).clip;
  REQUIRE(render.audio.num_samples() == expected.num_samples());
  CHECK(render.audio.samples == expected.samples);
  CHECK(render.records.empty());
  CHECK(render.bg_spec.num_frames() == 934);
}

TEST_CASE("realization is bit-reproducible") {
  const Pools pools = make_test_pools();
  DatasetConfig config;
  config.master_seed = 11;
  config.density_choices = {2};
  config.sigma_lo = config.sigma_hi = 0.003;
  const SceneRecipe recipe =
      sample_recipe(config, pools, {0, 1, 2, 3}, 0);
  REQUIRE(recipe.gaussian_sigma == 0.003);

  const SceneRender a = realize_scene(recipe, pools);
  const SceneRender b = realize_scene(recipe, pools);
  CHECK(a.audio.samples == b.audio.samples);
  REQUIRE(a.records.size() == b.records.size());
  for (size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].voc_id == b.records[i].voc_id);
    CHECK(a.records[i].applied_gain == b.records[i].applied_gain);
  }

  const SceneRender replay = realize_with_gains(recipe, pools, a.records);
  CHECK(replay.audio.samples == a.audio.samples);

  std::vector<PlacementRecord> wrong = a.records;
  std::swap(wrong[0], wrong[1]);
  if (wrong[0].voc_id != wrong[1].voc_id) {
    CHECK_THROWS_AS(realize_with_gains(recipe, pools, wrong),
                    std::invalid_argument);
  }
  wrong = a.records;
  wrong.pop_back();
  CHECK_THROWS_AS(realize_with_gains(recipe, pools, wrong),
                  std::invalid_argument);
}

TEST_CASE("applied gains hit the target snr against the augmented background") {
  const Pools pools = make_test_pools();
  SceneRecipe recipe;
  recipe.scene_id = "scene_snr";
  recipe.seed = 21;
  recipe.background_id = "bg1";
  recipe.crop_offset_s = 1.0;
  recipe.vocals.push_back({"voc0", 3.0, 0.25});

  const SceneRender render = realize_scene(recipe, pools);
  REQUIRE(render.records.size() == 1);
  const double gain = render.records[0].applied_gain;
  CHECK(gain > 0.0);

  // Re-derive the achieved snr from the pre-vocal spectrogram the render
  // carries and the pool caches.
  const PoolVocal& pv = pools.vocal("voc0");
  const long shift = placement_frame_shift(
      3.0, 48000, render.bg_spec.params,
      static_cast<long>(pv.power.num_frames()),
      static_cast<long>(render.bg_spec.num_frames()));
  double p_sig = 0.0;
  double p_bg = 0.0;
  for (size_t u = 0; u < pv.power.num_frames(); ++u) {
    for (size_t f = 0; f < pv.power.num_bins(); ++f) {
      if (pv.voc.source_mask(u, f) == 0) continue;
      p_sig += pv.power.values(u, f);
      p_bg += render.bg_spec.values(static_cast<size_t>(shift) + u, f);
    }
  }
  const double achieved = gain * gain * p_sig / p_bg;
  CHECK(achieved == doctest::Approx(0.25).epsilon(1e-9));

  // Heavier augmentation noise raises the background power, so the same
  // target needs a larger gain.
  SceneRecipe noisy = recipe;
  noisy.gaussian_sigma = 1.0;
  const SceneRender loud = realize_scene(noisy, pools);
  CHECK(loud.records[0].applied_gain > 2.5 * gain);
}

TEST_CASE("a scene that clips more than one percent is rejected") {
  Pools pools = make_test_pools(1, 1, 0);
  // Two percent of the background samples are full-scale spikes; levelling
  // the quiet floor up pushes them far past the rails.
  AudioClip& bg = pools.backgrounds[0];
  Rng rng(3);
  for (double& s : bg.samples) s = 0.01 * rng.gaussian();
  for (size_t i = 0; i < bg.samples.size(); i += 50) bg.samples[i] = 1.0;

  SceneRecipe recipe;
  recipe.scene_id = "scene_clip";
  recipe.background_id = "bg0";
  CHECK_THROWS_AS(realize_scene(recipe, pools), ConstraintError);
}

TEST_CASE("unknown pool ids are data errors") {
  const Pools pools = make_test_pools();
  SceneRecipe recipe;
  recipe.scene_id = "scene_bad";
  recipe.background_id = "nope";
  CHECK_THROWS_AS(realize_scene(recipe, pools), DataError);

  recipe.background_id = "bg0";
  recipe.vocals.push_back({"nope", 0.0, 1.0});
  CHECK_THROWS_AS(realize_scene(recipe, pools), DataError);
}

}  // TEST_SUITE
