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

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "synthscape/labelling.hpp"
#include "synthscape/render.hpp"
#include "synthscape/synthesis.hpp"

namespace synthscape {

using ordered_json = nlohmann::ordered_json;

struct DatasetSummary {
  int scene_count = 0;
  std::map<int, int> density_histogram;  // placements per scene -> scenes
  double mean_target_snr = 0.0;
  int placement_count = 0;
  int dropped_placements = 0;
  int regenerated_scenes = 0;
};

/// The dataset-level annotation document. Scene order follows scene_id.
struct Manifest {
  DatasetConfig config;
  RenderParams render;
  AxisMap axes;
  std::vector<std::string> categories;
  DatasetSummary summary;
  std::vector<SceneLabel> scenes;
};

/// Relative paths inside a dataset root.
std::string audio_rel_path(const std::string& scene_id);
std::string image_rel_path(const std::string& scene_id);

void write_recipes(const std::vector<SceneRecipe>& recipes,
                   const std::filesystem::path& path);
std::vector<SceneRecipe> read_recipes(const std::filesystem::path& path);

void write_manifest(const Manifest& manifest,
                    const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);

/// Shared converters so config files and manifests stay schema-compatible.
ordered_json dataset_config_to_json(const DatasetConfig& config);
DatasetConfig dataset_config_from_json(const nlohmann::json& doc);
ordered_json render_params_to_json(const RenderParams& params);
RenderParams render_params_from_json(const nlohmann::json& doc);

}  // namespace synthscape
