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

#include "synthscape/pools.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <utility>

#include "synthscape/error.hpp"
#include "synthscape/resample.hpp"
#include "synthscape/rle.hpp"
#include "synthscape/wav.hpp"

namespace synthscape {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("malformed json in " + path.string() + ": " + e.what());
  }
}

void check_schema(const json& doc, const std::filesystem::path& path) {
  if (!doc.is_object() || doc.value("schema_version", 0) != 1) {
    throw DataError("unsupported schema_version in " + path.string());
  }
}

template <typename T>
T require(const json& obj, const char* key,
          const std::filesystem::path& path) {
  if (!obj.contains(key)) {
    throw DataError("missing field '" + std::string(key) + "' in " +
                    path.string());
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw DataError("field '" + std::string(key) + "' has the wrong type in " +
                    path.string());
  }
}

StftParams stft_params_from_json(const json& obj,
                                 const std::filesystem::path& path) {
  StftParams params;
  params.fft_size = require<int>(obj, "fft_size", path);
  params.window_size = require<int>(obj, "window_size", path);
  params.hop = require<int>(obj, "hop", path);
  params.window = window_from_name(require<std::string>(obj, "window", path));
  params.validate();
  return params;
}

}  // namespace

const AudioClip& Pools::background(const std::string& id) const {
  for (const AudioClip& bg : backgrounds) {
    if (bg.source_id == id) return bg;
  }
  throw DataError("unknown background '" + id + "'");
}

const PoolVocal& Pools::vocal(const std::string& id) const {
  for (const PoolVocal& v : vocals) {
    if (v.id == id) return v;
  }
  throw DataError("unknown vocalisation '" + id + "'");
}

const Contaminant& Pools::contaminant(const std::string& id) const {
  for (const Contaminant& c : contaminants) {
    if (c.id == id) return c;
  }
  throw DataError("unknown contaminant '" + id + "'");
}

void Pools::validate_for(double duration_s) const {
  for (const AudioClip& bg : backgrounds) {
    if (bg.duration_s() < duration_s) {
      throw DataError("background '" + bg.source_id +
                      "' is shorter than the scene duration");
    }
  }
  for (const Contaminant& c : contaminants) {
    if (c.clip.duration_s() > duration_s) {
      throw DataError("contaminant '" + c.id +
                      "' is longer than the scene duration");
    }
  }
}

std::vector<AudioClip> load_backgrounds(const std::filesystem::path& catalog) {
  const json doc = read_json_file(catalog);
  check_schema(doc, catalog);
  if (!doc.contains("backgrounds") || !doc["backgrounds"].is_array()) {
    throw DataError("missing backgrounds array in " + catalog.string());
  }
  const std::filesystem::path base = catalog.parent_path();
  std::vector<AudioClip> out;
  for (const json& entry : doc["backgrounds"]) {
    const std::string id = require<std::string>(entry, "id", catalog);
    const std::string rel = require<std::string>(entry, "path", catalog);
    AudioClip clip = to_scene_rate(read_audio(base / rel));
    clip.source_id = id;
    if (entry.contains("f_lo") != entry.contains("f_hi")) {
      throw DataError("background '" + id + "' has only one frequency bound");
    }
    if (entry.contains("f_lo")) {
      FreqBand band;
      band.lo = require<double>(entry, "f_lo", catalog);
      band.hi = require<double>(entry, "f_hi", catalog);
      if (!(band.lo >= 0.0 && band.lo < band.hi)) {
        throw DataError("background '" + id + "' has invalid bounds");
      }
      clip.freq_bounds = band;
    }
    out.push_back(std::move(clip));
  }
  if (out.empty()) throw DataError("empty background catalog");
  return out;
}

PoolVocal make_pool_vocal(std::string id, IsolatedVocalisation voc) {
  PoolVocal entry;
  entry.id = std::move(id);
  entry.voc = std::move(voc);
  entry.power = stft_power(entry.voc.clip, entry.voc.params);
  const Grid<uint8_t>& mask = entry.voc.source_mask;
  if (mask.rows() != entry.power.num_frames() ||
      mask.cols() != entry.power.num_bins()) {
    throw DataError("vocalisation '" + entry.id +
                    "' mask does not match its spectrogram");
  }
  for (size_t i = 0; i < mask.size(); ++i) {
    if (mask.storage()[i] != 0) {
      entry.mask_power += entry.power.values.storage()[i];
    }
  }
  if (entry.mask_power <= 0.0) {
    throw DataError("vocalisation '" + entry.id + "' has zero mask power");
  }
  return entry;
}

std::vector<PoolVocal> load_vocal_pool(const std::filesystem::path& dir) {
  const std::filesystem::path index = dir / "pool.json";
  const json doc = read_json_file(index);
  check_schema(doc, index);
  const StftParams params = doc.contains("stft")
                                ? stft_params_from_json(doc["stft"], index)
                                : StftParams{};
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw DataError("missing entries array in " + index.string());
  }
  std::vector<PoolVocal> out;
  for (const json& entry : doc["entries"]) {
    IsolatedVocalisation voc;
    voc.params = params;
    const std::string id = require<std::string>(entry, "id", index);
    voc.class_label = require<std::string>(entry, "class_label", index);
    const std::string rel = require<std::string>(entry, "clip", index);
    voc.clip = read_audio(dir / rel);
    if (voc.clip.sample_rate != kSceneSampleRate) {
      throw DataError("vocalisation '" + id + "' is not at scene rate");
    }
    voc.clip.source_id = id;

    if (!entry.contains("mask")) {
      throw DataError("vocalisation '" + id + "' is missing its mask");
    }
    const json& m = entry["mask"];
    voc.source_mask =
        rle_decode(require<uint64_t>(m, "rows", index),
                   require<uint64_t>(m, "cols", index),
                   require<std::vector<uint64_t>>(m, "counts", index));

    voc.freq_extent.lo = require<double>(entry, "freq_lo", index);
    voc.freq_extent.hi = require<double>(entry, "freq_hi", index);
    voc.rms_dbfs = rms_dbfs(voc.clip);
    out.push_back(make_pool_vocal(id, std::move(voc)));
  }
  return out;
}

void save_vocal_pool(const std::vector<IsolatedVocalisation>& vocals,
                     const std::vector<std::string>& ids,
                     const std::filesystem::path& dir) {
  if (vocals.size() != ids.size()) {
    throw std::invalid_argument("one id required per vocalisation");
  }
  std::filesystem::create_directories(dir);
  ordered_json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "vocalisations";
  doc["sample_rate"] = kSceneSampleRate;
  ordered_json entries = ordered_json::array();
  for (size_t i = 0; i < vocals.size(); ++i) {
    const IsolatedVocalisation& voc = vocals[i];
    if (i == 0) {
      ordered_json stft;
      stft["fft_size"] = voc.params.fft_size;
      stft["window_size"] = voc.params.window_size;
      stft["hop"] = voc.params.hop;
      stft["window"] = window_name(voc.params.window);
      doc["stft"] = stft;
    }
    const std::string wav_name = ids[i] + ".wav";
    write_audio(voc.clip, dir / wav_name, WavEncoding::kFloat32);

    ordered_json e;
    e["id"] = ids[i];
    e["class_label"] = voc.class_label;
    e["clip"] = wav_name;
    e["rms_dbfs"] = voc.rms_dbfs;
    e["freq_lo"] = voc.freq_extent.lo;
    e["freq_hi"] = voc.freq_extent.hi;
    ordered_json mask;
    mask["rows"] = voc.source_mask.rows();
    mask["cols"] = voc.source_mask.cols();
    mask["counts"] = rle_encode(voc.source_mask);
    e["mask"] = mask;
    entries.push_back(std::move(e));
  }
  doc["entries"] = std::move(entries);
  std::ofstream out(dir / "pool.json");
  if (!out) throw DataError("cannot write " + (dir / "pool.json").string());
  out << doc.dump(2) << "\n";
}

std::vector<Contaminant> load_contaminant_pool(
    const std::filesystem::path& dir) {
  const std::filesystem::path index = dir / "pool.json";
  const json doc = read_json_file(index);
  check_schema(doc, index);
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw DataError("missing entries array in " + index.string());
  }
  std::vector<Contaminant> out;
  for (const json& entry : doc["entries"]) {
    Contaminant c;
    c.id = require<std::string>(entry, "id", index);
    const std::string rel = require<std::string>(entry, "clip", index);
    c.clip = to_scene_rate(read_audio(dir / rel));
    c.clip.source_id = c.id;
    if (rms_dbfs(c.clip) == kSilenceDbfs) {
      throw DataError("contaminant '" + c.id + "' is silent");
    }
    c.clip = scale_to_rms(std::move(c.clip), kPoolLevelDbfs);
    out.push_back(std::move(c));
  }
  return out;
}

AudioClip to_scene_rate(AudioClip clip) {
  if (clip.sample_rate == kSceneSampleRate) return clip;
  return resample(clip, kSceneSampleRate);
}

AudioClip scale_to_rms(AudioClip clip, double target_dbfs) {
  const double level = rms_dbfs(clip);
  if (level == kSilenceDbfs) {
    throw ConstraintError("cannot level a silent clip");
  }
  const double gain = std::pow(10.0, (target_dbfs - level) / 20.0);
  for (double& s : clip.samples) s *= gain;
  return clip;
}

}  // namespace synthscape
