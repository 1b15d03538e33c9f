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

#include "synthscape/config.hpp"

#include <json.hpp>

#include <fstream>

#include "synthscape/error.hpp"
#include "synthscape/manifest.hpp"

namespace synthscape {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& rel) {
  const std::filesystem::path p(rel);
  return p.is_absolute() ? p : base / p;
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("malformed json in " + path.string() + ": " + e.what());
  }
  if (doc.value("schema_version", 0) != 1) {
    throw DataError("unsupported config schema in " + path.string());
  }

  const std::filesystem::path base = path.parent_path();
  RunConfig config;
  try {
    config.backgrounds =
        resolve(base, doc.at("backgrounds").get<std::string>());
    config.vocalisations =
        resolve(base, doc.at("vocalisations").get<std::string>());
    if (doc.contains("contaminants")) {
      config.contaminants =
          resolve(base, doc.at("contaminants").get<std::string>());
    }
    if (doc.contains("dataset")) {
      config.dataset = dataset_config_from_json(doc.at("dataset"));
    }
    if (doc.contains("render")) {
      config.render = render_params_from_json(doc.at("render"));
    }
    if (doc.contains("out")) {
      config.out = resolve(base, doc.at("out").get<std::string>());
    }
    config.workers = doc.value("workers", 1);
  } catch (const json::exception& e) {
    throw DataError("bad config in " + path.string() + ": " + e.what());
  }

  // Without a contaminant pool the natural default is zero per scene unless
  // the config spelled out its own choices.
  if (config.contaminants.empty() &&
      (!doc.contains("dataset") ||
       !doc.at("dataset").contains("contaminant_count_choices"))) {
    config.dataset.contaminant_count_choices = {0};
  }
  return config;
}

Pools load_pools(const RunConfig& config) {
  Pools pools;
  pools.backgrounds = load_backgrounds(config.backgrounds);
  pools.vocals = load_vocal_pool(config.vocalisations);
  if (!config.contaminants.empty()) {
    pools.contaminants = load_contaminant_pool(config.contaminants);
  }
  return pools;
}

}  // namespace synthscape
