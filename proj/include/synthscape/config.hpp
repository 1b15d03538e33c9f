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

#include "synthscape/pools.hpp"
#include "synthscape/render.hpp"
#include "synthscape/synthesis.hpp"

namespace synthscape {

/// One synth/sweep run: source pool locations plus sampling and render
/// settings. Relative paths are resolved against the config file directory.
struct RunConfig {
  std::filesystem::path backgrounds;    // catalog file
  std::filesystem::path vocalisations;  // pool directory
  std::filesystem::path contaminants;   // pool directory; may be empty
  DatasetConfig dataset;
  RenderParams render;
  std::filesystem::path out;
  int workers = 1;
};

RunConfig load_run_config(const std::filesystem::path& path);

Pools load_pools(const RunConfig& config);

}  // namespace synthscape
