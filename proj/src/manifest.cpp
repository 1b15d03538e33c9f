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

#include "synthscape/manifest.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "synthscape/error.hpp"

namespace synthscape {

namespace {

using nlohmann::json;

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("malformed json in " + path.string() + ": " + e.what());
  }
}

void dump_json(const ordered_json& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
  if (!out) throw DataError("short write to " + path.string());
}

// RLE counts travel as one space-separated string to keep the document
// compact under pretty-printing.
std::string counts_to_string(const std::vector<uint64_t>& counts) {
  std::ostringstream out;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (i > 0) out << ' ';
    out << counts[i];
  }
  return out.str();
}

std::vector<uint64_t> counts_from_string(const std::string& text) {
  std::vector<uint64_t> counts;
  std::istringstream in(text);
  uint64_t v = 0;
  while (in >> v) counts.push_back(v);
  if (!in.eof()) throw DataError("bad rle counts string");
  return counts;
}

ordered_json bbox_to_json(const BBox& b) {
  ordered_json j;
  j["t0"] = b.t0;
  j["t1"] = b.t1;
  j["f0"] = b.f0;
  j["f1"] = b.f1;
  j["x0"] = b.x0;
  j["y0"] = b.y0;
  j["x1"] = b.x1;
  j["y1"] = b.y1;
  return j;
}

BBox bbox_from_json(const json& j) {
  BBox b;
  b.t0 = j.at("t0").get<double>();
  b.t1 = j.at("t1").get<double>();
  b.f0 = j.at("f0").get<double>();
  b.f1 = j.at("f1").get<double>();
  b.x0 = j.at("x0").get<double>();
  b.y0 = j.at("y0").get<double>();
  b.x1 = j.at("x1").get<double>();
  b.y1 = j.at("y1").get<double>();
  return b;
}

ordered_json annotation_to_json(const Annotation& a) {
  ordered_json j;
  j["id"] = a.id;
  j["class_label"] = a.class_label;
  j["bbox"] = bbox_to_json(a.bbox);
  ordered_json mask;
  mask["rows"] = a.mask_rows;
  mask["cols"] = a.mask_cols;
  mask["counts"] = counts_to_string(a.mask_rle);
  j["mask"] = mask;
  j["target_snr"] = a.target_snr;
  j["applied_gain"] = a.applied_gain;
  j["source_id"] = a.source_id;
  j["merged_from"] = a.merged_from;
  return j;
}

Annotation annotation_from_json(const json& j) {
  Annotation a;
  a.id = j.at("id").get<int>();
  a.class_label = j.at("class_label").get<std::string>();
  a.bbox = bbox_from_json(j.at("bbox"));
  const json& mask = j.at("mask");
  a.mask_rows = mask.at("rows").get<size_t>();
  a.mask_cols = mask.at("cols").get<size_t>();
  a.mask_rle = counts_from_string(mask.at("counts").get<std::string>());
  a.target_snr = j.at("target_snr").get<double>();
  a.applied_gain = j.at("applied_gain").get<double>();
  a.source_id = j.at("source_id").get<std::string>();
  a.merged_from = j.at("merged_from").get<std::vector<int>>();
  return a;
}

ordered_json recipe_to_json(const SceneRecipe& r) {
  ordered_json j;
  j["scene_id"] = r.scene_id;
  j["seed"] = r.seed;
  j["background_id"] = r.background_id;
  j["crop_offset_s"] = r.crop_offset_s;
  j["gaussian_sigma"] = r.gaussian_sigma;
  j["duration_s"] = r.duration_s;
  if (r.band.has_value()) {
    ordered_json band;
    band["f_lo"] = r.band->lo;
    band["f_hi"] = r.band->hi;
    j["band"] = band;
  } else {
    j["band"] = nullptr;
  }
  ordered_json contaminants = ordered_json::array();
  for (const ContaminantPlacement& c : r.contaminants) {
    ordered_json p;
    p["id"] = c.id;
    p["offset_s"] = c.offset_s;
    p["gain"] = c.gain;
    contaminants.push_back(std::move(p));
  }
  j["contaminants"] = std::move(contaminants);
  ordered_json vocals = ordered_json::array();
  for (const VocalPlacement& v : r.vocals) {
    ordered_json p;
    p["id"] = v.id;
    p["offset_s"] = v.offset_s;
    p["target_snr"] = v.target_snr;
    vocals.push_back(std::move(p));
  }
  j["vocals"] = std::move(vocals);
  return j;
}

SceneRecipe recipe_from_json(const json& j) {
  SceneRecipe r;
  r.scene_id = j.at("scene_id").get<std::string>();
  r.seed = j.at("seed").get<uint64_t>();
  r.background_id = j.at("background_id").get<std::string>();
  r.crop_offset_s = j.at("crop_offset_s").get<double>();
  r.gaussian_sigma = j.at("gaussian_sigma").get<double>();
  r.duration_s = j.at("duration_s").get<double>();
  if (j.contains("band") && !j.at("band").is_null()) {
    FreqBand band;
    band.lo = j.at("band").at("f_lo").get<double>();
    band.hi = j.at("band").at("f_hi").get<double>();
    r.band = band;
  }
  for (const json& p : j.at("contaminants")) {
    ContaminantPlacement c;
    c.id = p.at("id").get<std::string>();
    c.offset_s = p.at("offset_s").get<double>();
    c.gain = p.at("gain").get<double>();
    r.contaminants.push_back(std::move(c));
  }
  for (const json& p : j.at("vocals")) {
    VocalPlacement v;
    v.id = p.at("id").get<std::string>();
    v.offset_s = p.at("offset_s").get<double>();
    v.target_snr = p.at("target_snr").get<double>();
    r.vocals.push_back(std::move(v));
  }
  return r;
}

}  // namespace

std::string audio_rel_path(const std::string& scene_id) {
  return "audio/" + scene_id + ".wav";
}

std::string image_rel_path(const std::string& scene_id) {
  return "images/" + scene_id + ".png";
}

void write_recipes(const std::vector<SceneRecipe>& recipes,
                   const std::filesystem::path& path) {
  ordered_json doc;
  doc["schema_version"] = 1;
  ordered_json scenes = ordered_json::array();
  for (const SceneRecipe& r : recipes) scenes.push_back(recipe_to_json(r));
  doc["scenes"] = std::move(scenes);
  dump_json(doc, path);
}

std::vector<SceneRecipe> read_recipes(const std::filesystem::path& path) {
  const json doc = load_json(path);
  if (doc.value("schema_version", 0) != 1) {
    throw DataError("unsupported recipes schema in " + path.string());
  }
  std::vector<SceneRecipe> out;
  try {
    for (const json& j : doc.at("scenes")) out.push_back(recipe_from_json(j));
  } catch (const json::exception& e) {
    throw DataError("bad recipe in " + path.string() + ": " + e.what());
  }
  return out;
}

ordered_json dataset_config_to_json(const DatasetConfig& c) {
  ordered_json j;
  j["n"] = c.n;
  j["s"] = c.s;
  j["snr_lo"] = c.snr_lo;
  j["snr_hi"] = c.snr_hi;
  j["density_choices"] = c.density_choices;
  j["contaminant_count_choices"] = c.contaminant_count_choices;
  j["sigma_lo"] = c.sigma_lo;
  j["sigma_hi"] = c.sigma_hi;
  j["master_seed"] = c.master_seed;
  j["duration_s"] = c.duration_s;
  j["beta"] = c.beta;
  return j;
}

DatasetConfig dataset_config_from_json(const json& doc) {
  DatasetConfig c;
  try {
    c.n = doc.value("n", c.n);
    c.s = doc.value("s", c.s);
    c.snr_lo = doc.value("snr_lo", c.snr_lo);
    c.snr_hi = doc.value("snr_hi", c.snr_hi);
    c.density_choices = doc.value("density_choices", c.density_choices);
    c.contaminant_count_choices =
        doc.value("contaminant_count_choices", c.contaminant_count_choices);
    c.sigma_lo = doc.value("sigma_lo", c.sigma_lo);
    c.sigma_hi = doc.value("sigma_hi", c.sigma_hi);
    c.master_seed = doc.value("master_seed", c.master_seed);
    c.duration_s = doc.value("duration_s", c.duration_s);
    c.beta = doc.value("beta", c.beta);
  } catch (const json::exception& e) {
    throw DataError(std::string("bad dataset config: ") + e.what());
  }
  return c;
}

ordered_json render_params_to_json(const RenderParams& p) {
  ordered_json j;
  ordered_json pcen;
  pcen["smoothing"] = p.pcen.smoothing;
  pcen["alpha"] = p.pcen.alpha;
  pcen["delta"] = p.pcen.delta;
  pcen["root"] = p.pcen.root;
  pcen["eps"] = p.pcen.eps;
  j["pcen"] = pcen;
  j["f_min"] = p.f_min;
  j["f_max"] = p.f_max;
  j["log_bins"] = p.log_bins;
  return j;
}

RenderParams render_params_from_json(const json& doc) {
  RenderParams p;
  try {
    if (doc.contains("pcen")) {
      const json& pc = doc.at("pcen");
      p.pcen.smoothing = pc.value("smoothing", p.pcen.smoothing);
      p.pcen.alpha = pc.value("alpha", p.pcen.alpha);
      p.pcen.delta = pc.value("delta", p.pcen.delta);
      p.pcen.root = pc.value("root", p.pcen.root);
      p.pcen.eps = pc.value("eps", p.pcen.eps);
    }
    p.f_min = doc.value("f_min", p.f_min);
    p.f_max = doc.value("f_max", p.f_max);
    p.log_bins = doc.value("log_bins", p.log_bins);
  } catch (const json::exception& e) {
    throw DataError(std::string("bad render params: ") + e.what());
  }
  return p;
}

void write_manifest(const Manifest& manifest,
                    const std::filesystem::path& path) {
  ordered_json doc;
  doc["schema_version"] = 1;
  doc["config"] = dataset_config_to_json(manifest.config);
  doc["render"] = render_params_to_json(manifest.render);
  ordered_json axes;
  axes["time_span_s"] = manifest.axes.time_span_s;
  axes["f_min"] = manifest.axes.f_min;
  axes["f_max"] = manifest.axes.f_max;
  axes["width"] = kImageSize;
  axes["height"] = kImageSize;
  doc["axes"] = axes;
  doc["categories"] = manifest.categories;

  ordered_json summary;
  summary["scene_count"] = manifest.summary.scene_count;
  ordered_json hist;
  for (const auto& [count, scenes] : manifest.summary.density_histogram) {
    hist[std::to_string(count)] = scenes;
  }
  summary["density_histogram"] = hist;
  if (manifest.summary.placement_count > 0) {
    summary["mean_target_snr"] = manifest.summary.mean_target_snr;
  } else {
    summary["mean_target_snr"] = nullptr;
  }
  summary["placement_count"] = manifest.summary.placement_count;
  summary["dropped_placements"] = manifest.summary.dropped_placements;
  summary["regenerated_scenes"] = manifest.summary.regenerated_scenes;
  doc["summary"] = summary;

  ordered_json scenes = ordered_json::array();
  for (const SceneLabel& s : manifest.scenes) {
    ordered_json j;
    j["scene_id"] = s.scene_id;
    j["audio"] = audio_rel_path(s.scene_id);
    j["image"] = image_rel_path(s.scene_id);
    j["recipe"] = "recipes.txt#" + s.scene_id;
    j["clip_fraction"] = s.clip_fraction;
    j["present_classes"] = s.present_classes;
    j["dropped"] = s.dropped;
    ordered_json anns = ordered_json::array();
    for (const Annotation& a : s.annotations) {
      anns.push_back(annotation_to_json(a));
    }
    j["annotations"] = std::move(anns);
    scenes.push_back(std::move(j));
  }
  doc["scenes"] = std::move(scenes);
  dump_json(doc, path);
}

Manifest read_manifest(const std::filesystem::path& path) {
  const json doc = load_json(path);
  if (doc.value("schema_version", 0) != 1) {
    throw DataError("unsupported manifest schema in " + path.string());
  }
  Manifest m;
  try {
    m.config = dataset_config_from_json(doc.at("config"));
    m.render = render_params_from_json(doc.at("render"));
    const json& axes = doc.at("axes");
    m.axes.time_span_s = axes.at("time_span_s").get<double>();
    m.axes.f_min = axes.at("f_min").get<double>();
    m.axes.f_max = axes.at("f_max").get<double>();
    m.categories = doc.at("categories").get<std::vector<std::string>>();

    const json& summary = doc.at("summary");
    m.summary.scene_count = summary.at("scene_count").get<int>();
    for (const auto& [key, value] : summary.at("density_histogram").items()) {
      m.summary.density_histogram[std::stoi(key)] = value.get<int>();
    }
    if (!summary.at("mean_target_snr").is_null()) {
      m.summary.mean_target_snr = summary.at("mean_target_snr").get<double>();
    }
    m.summary.placement_count = summary.at("placement_count").get<int>();
    m.summary.dropped_placements =
        summary.at("dropped_placements").get<int>();
    m.summary.regenerated_scenes =
        summary.at("regenerated_scenes").get<int>();

    for (const json& j : doc.at("scenes")) {
      SceneLabel s;
      s.scene_id = j.at("scene_id").get<std::string>();
      s.clip_fraction = j.at("clip_fraction").get<double>();
      s.present_classes =
          j.at("present_classes").get<std::vector<std::string>>();
      s.dropped = j.at("dropped").get<int>();
      for (const json& a : j.at("annotations")) {
        s.annotations.push_back(annotation_from_json(a));
      }
      m.scenes.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw DataError("bad manifest in " + path.string() + ": " + e.what());
  }
  return m;
}

}  // namespace synthscape
