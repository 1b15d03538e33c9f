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
#include <functional>

#include "synthscape/manifest.hpp"
#include "synthscape/pools.hpp"
#include "synthscape/synthesis.hpp"

namespace synthscape {

struct BuildOptions {
  std::filesystem::path out_root;
  int workers = 1;
  std::function<void(int done, int total)> progress;  // may be empty
};

/// Builds a dataset: audio/, images/, recipes.txt, manifest.txt under
/// out_root. Scene outputs are a pure function of (config, pools), so worker
/// count and resumption cannot change a byte; files already on disk are left
/// alone. Returns the manifest that was written.
Manifest build_dataset(const DatasetConfig& config, const RenderParams& render,
                       const Pools& pools, const BuildOptions& options);

}  // namespace synthscape
