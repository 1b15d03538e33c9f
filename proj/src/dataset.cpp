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

#include "synthscape/dataset.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <thread>
#include <vector>

#include "synthscape/error.hpp"
#include "synthscape/labelling.hpp"
#include "synthscape/png_io.hpp"
#include "synthscape/wav.hpp"

namespace synthscape {

namespace {

struct SceneOutcome {
  SceneRecipe recipe;
  SceneLabel label;
  AxisMap axes;
  int regens = 0;
};

SceneOutcome process_scene(const DatasetConfig& config,
                           const RenderParams& render_params,
                           const Pools& pools,
                           const std::vector<size_t>& subset, int index,
                           const std::filesystem::path& out_root) {
  SceneRecipe recipe;
  SceneRender render;
  int attempt = 0;
  std::string last_error;
  for (;; ++attempt) {
    if (attempt >= kSceneAttempts) {
      throw ConstraintError(make_scene_id(index) + " unsatisfiable after " +
                            std::to_string(kSceneAttempts) +
                            " attempts; last: " + last_error);
    }
    try {
      recipe = sample_recipe(config, pools, subset, index, attempt);
      render = realize_scene(recipe, pools);
      break;
    } catch (const ConstraintError& e) {
      last_error = e.what();
    }
  }

  const PowerSpectrogram final_spec = stft_power(render.audio);
  const SpectroImage image = render_image(final_spec, render_params);

  std::vector<PlacedVocal> placed;
  for (const PlacementRecord& rec : render.records) {
    const PoolVocal& pv = pools.vocal(rec.voc_id);
    placed.push_back({&pv.voc, &pv.power, rec.offset_s, rec.applied_gain,
                      rec.target_snr});
  }
  AnnotationResult ann = build_annotations(placed, render.bg_spec, image.axes,
                                           config.beta);

  SceneOutcome outcome;
  outcome.recipe = std::move(recipe);
  outcome.axes = image.axes;
  outcome.regens = attempt;
  outcome.label.scene_id = outcome.recipe.scene_id;
  outcome.label.annotations = std::move(ann.annotations);
  outcome.label.present_classes = present_classes(outcome.label.annotations);
  outcome.label.clip_fraction = render.clip_fraction;
  outcome.label.dropped = ann.dropped;

  const std::filesystem::path wav_path =
      out_root / audio_rel_path(outcome.recipe.scene_id);
  if (!std::filesystem::exists(wav_path)) {
    write_audio(render.audio, wav_path, WavEncoding::kFloat32);
  }
  const std::filesystem::path png_path =
      out_root / image_rel_path(outcome.recipe.scene_id);
  if (!std::filesystem::exists(png_path)) {
    write_png_gray(image.pixels, png_path);
  }
  return outcome;
}

}  // namespace

Manifest build_dataset(const DatasetConfig& config, const RenderParams& render,
                       const Pools& pools, const BuildOptions& options) {
  config.validate(pools.vocals.size(), pools.contaminants.size());
  render.pcen.validate();
  pools.validate_for(config.duration_s);
  if (options.workers < 1) {
    throw std::invalid_argument("worker count must be at least 1");
  }
  std::filesystem::create_directories(options.out_root / "audio");
  std::filesystem::create_directories(options.out_root / "images");

  const std::vector<size_t> subset =
      vocal_selection(config, pools.vocals.size());

  std::vector<SceneOutcome> outcomes(static_cast<size_t>(config.n));
  std::atomic<int> next{0};
  std::atomic<int> done{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (!failed.load()) {
      const int index = next.fetch_add(1);
      if (index >= config.n) return;
      try {
        outcomes[static_cast<size_t>(index)] =
            process_scene(config, render, pools, subset, index,
                          options.out_root);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
      const int completed = done.fetch_add(1) + 1;
      if (options.progress) {
        std::lock_guard<std::mutex> lock(error_mutex);
        options.progress(completed, config.n);
      }
    }
  };

  const int thread_count = std::min(options.workers, config.n);
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  Manifest manifest;
  manifest.config = config;
  manifest.render = render;
  manifest.axes = outcomes.front().axes;

  std::set<std::string> classes;
  for (size_t idx : subset) classes.insert(pools.vocals[idx].voc.class_label);
  manifest.categories.assign(classes.begin(), classes.end());

  std::vector<SceneRecipe> recipes;
  recipes.reserve(outcomes.size());
  double snr_sum = 0.0;
  for (SceneOutcome& o : outcomes) {
    manifest.summary.density_histogram[static_cast<int>(
        o.recipe.vocals.size())]++;
    for (const VocalPlacement& p : o.recipe.vocals) {
      snr_sum += p.target_snr;
      ++manifest.summary.placement_count;
    }
    manifest.summary.dropped_placements += o.label.dropped;
    manifest.summary.regenerated_scenes += o.regens;
    manifest.scenes.push_back(std::move(o.label));
    recipes.push_back(std::move(o.recipe));
  }
  manifest.summary.scene_count = config.n;
  if (manifest.summary.placement_count > 0) {
    manifest.summary.mean_target_snr =
        snr_sum / manifest.summary.placement_count;
  }

  write_recipes(recipes, options.out_root / "recipes.txt");
  write_manifest(manifest, options.out_root / "manifest.txt");
  return manifest;
}

}  // namespace synthscape
