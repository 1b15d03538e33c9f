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

#include "synthscape/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "synthscape/config.hpp"
#include "synthscape/dataset.hpp"
#include "synthscape/error.hpp"
#include "synthscape/isolation.hpp"
#include "synthscape/manifest.hpp"
#include "synthscape/metrics.hpp"
#include "synthscape/png_io.hpp"
#include "synthscape/pools.hpp"
#include "synthscape/rle.hpp"
#include "synthscape/rng.hpp"
#include "synthscape/wav.hpp"

namespace synthscape {

namespace {

using nlohmann::json;

struct SynthFlags {
  std::string config_path;
  uint64_t seed = 0;
  int n = 0;
  int s = 0;
  double snr_lo = 0.0;
  double snr_hi = 0.0;
  int workers = 0;
  std::string out;
};

void add_synth_flags(CLI::App* cmd, SynthFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Run config file")
      ->required();
  cmd->add_option("--seed", flags.seed, "Master seed override");
  cmd->add_option("--n", flags.n, "Scene count override");
  cmd->add_option("--s", flags.s, "Unique-vocalisation cap override");
  cmd->add_option("--snr-lo", flags.snr_lo, "SNR range lower bound (linear)");
  cmd->add_option("--snr-hi", flags.snr_hi, "SNR range upper bound (linear)");
  cmd->add_option("--workers", flags.workers, "Worker thread count");
  cmd->add_option("--out", flags.out, "Output root override");
}

RunConfig apply_synth_flags(const CLI::App* cmd, const SynthFlags& flags) {
  RunConfig config = load_run_config(flags.config_path);
  if (cmd->count("--seed")) config.dataset.master_seed = flags.seed;
  if (cmd->count("--n")) config.dataset.n = flags.n;
  if (cmd->count("--s")) config.dataset.s = flags.s;
  if (cmd->count("--snr-lo")) config.dataset.snr_lo = flags.snr_lo;
  if (cmd->count("--snr-hi")) config.dataset.snr_hi = flags.snr_hi;
  if (cmd->count("--workers")) config.workers = flags.workers;
  if (cmd->count("--out")) config.out = flags.out;
  if (config.out.empty()) {
    throw DataError("no output root: set 'out' in the config or pass --out");
  }
  return config;
}

void print_summary(const Manifest& manifest) {
  const DatasetSummary& s = manifest.summary;
  std::printf("scenes           %d\n", s.scene_count);
  std::printf("density histogram");
  for (const auto& [count, scenes] : s.density_histogram) {
    std::printf("  %d:%d", count, scenes);
  }
  std::printf("\n");
  if (s.placement_count > 0) {
    std::printf("mean target snr  %.4f over %d placements\n",
                s.mean_target_snr, s.placement_count);
  } else {
    std::printf("mean target snr  n/a (no placements)\n");
  }
  std::printf("dropped          %d\n", s.dropped_placements);
  std::printf("regenerated      %d\n", s.regenerated_scenes);
}

int cmd_synth(const RunConfig& config) {
  const Pools pools = load_pools(config);
  BuildOptions options;
  options.out_root = config.out;
  options.workers = config.workers;
  options.progress = [](int done, int total) {
    if (done % 50 == 0 || done == total) {
      std::fprintf(stderr, "\r%d/%d scenes", done, total);
      if (done == total) std::fprintf(stderr, "\n");
    }
  };
  const Manifest manifest =
      build_dataset(config.dataset, config.render, pools, options);
  print_summary(manifest);
  return 0;
}

std::string format_axis_value(const std::string& axis, double value) {
  if (axis == "snr_min") {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
  }
  return std::to_string(static_cast<long long>(std::llround(value)));
}

int cmd_sweep(const RunConfig& base, const std::string& axis,
              const std::vector<double>& values, int replicate,
              const std::filesystem::path& out_root) {
  const Pools pools = load_pools(base);
  for (double value : values) {
    DatasetConfig config = base.dataset;
    if (axis == "n") {
      config.n = static_cast<int>(std::llround(value));
    } else if (axis == "s") {
      config.s = static_cast<int>(std::llround(value));
    } else {
      config.snr_lo = value;
    }
    const std::string value_str = format_axis_value(axis, value);
    config.master_seed = hash_combine(
        hash_combine(hash_combine(base.dataset.master_seed, hash_str(axis)),
                     hash_str(value_str)),
        static_cast<uint64_t>(replicate));

    std::string dir_name = axis + "_" + value_str;
    if (replicate > 0) dir_name += "_r" + std::to_string(replicate);
    BuildOptions options;
    options.out_root = out_root / dir_name;
    options.workers = base.workers;
    std::fprintf(stderr, "sweep %s\n", dir_name.c_str());
    const Manifest manifest =
        build_dataset(config, base.render, pools, options);
    std::printf("%s: %d scenes\n", dir_name.c_str(),
                manifest.summary.scene_count);
  }
  return 0;
}

int cmd_isolate(const std::filesystem::path& catalog_path,
                const std::filesystem::path& out_dir, double threshold_db,
                double gate_dbfs, double over_k) {
  std::ifstream in(catalog_path);
  if (!in) throw DataError("cannot open " + catalog_path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("malformed json in " + catalog_path.string() + ": " +
                    e.what());
  }
  if (doc.value("schema_version", 0) != 1) {
    throw DataError("unsupported catalog schema in " + catalog_path.string());
  }
  if (!doc.contains("rows") || !doc["rows"].is_array()) {
    throw DataError("missing rows array in " + catalog_path.string());
  }

  const std::filesystem::path base = catalog_path.parent_path();
  std::vector<IsolatedVocalisation> accepted;
  std::vector<std::string> ids;
  size_t rows = 0;
  for (const json& row : doc["rows"]) {
    ++rows;
    std::string id;
    try {
      id = row.at("id").get<std::string>();
      const std::string rel = row.at("path").get<std::string>();
      const std::string label = row.at("class_label").get<std::string>();
      const auto vocal = row.at("vocal").get<std::vector<double>>();
      const auto noise = row.at("noise").get<std::vector<double>>();
      const auto box = row.at("box").get<std::vector<double>>();
      if (vocal.size() != 2 || noise.size() != 2 || box.size() != 4) {
        throw DataError("intervals are [t0,t1] and box is [t0,t1,f0,f1]");
      }
      const double row_threshold = row.value("threshold_db", threshold_db);

      std::filesystem::path wav_path(rel);
      if (!wav_path.is_absolute()) wav_path = base / wav_path;
      AudioClip clip = to_scene_rate(read_audio(wav_path));
      clip.source_id = id;
      IsolatedVocalisation voc =
          isolate(clip, {vocal[0], vocal[1]}, {noise[0], noise[1]},
                  {box[0], box[1], box[2], box[3]}, row_threshold, label,
                  over_k);
      if (!gate_rms(voc, gate_dbfs)) {
        std::printf("reject %s (rms_gate %.2f dBFS)\n", id.c_str(),
                    voc.rms_dbfs);
        continue;
      }
      std::printf("accept %s (%s, %.2f dBFS)\n", id.c_str(),
                  voc.class_label.c_str(), voc.rms_dbfs);
      accepted.push_back(std::move(voc));
      ids.push_back(id);
    } catch (const ConstraintError& e) {
      std::printf("reject %s (empty_mask: %s)\n", id.c_str(), e.what());
    } catch (const json::exception& e) {
      throw DataError("bad catalog row in " + catalog_path.string() + ": " +
                      e.what());
    }
  }

  save_vocal_pool(accepted, ids, out_dir);
  std::printf("pool: %zu of %zu rows accepted -> %s\n", accepted.size(), rows,
              out_dir.string().c_str());
  if (rows == 0) {
    std::fprintf(stderr, "warning: empty catalog\n");
    return 0;
  }
  if (accepted.empty()) throw DataError("all catalog rows failed");
  return 0;
}

int cmd_eval(const std::filesystem::path& manifest_path,
             const std::filesystem::path& scores_path, double threshold,
             const std::string& out_path) {
  const Manifest manifest = read_manifest(manifest_path);
  std::map<std::string, int> labels;
  for (const SceneLabel& scene : manifest.scenes) {
    labels[scene.scene_id] = scene.present_classes.empty() ? 0 : 1;
  }
  std::vector<ScoredExample> examples;
  for (const Score& s : read_scores_csv(scores_path)) {
    const auto it = labels.find(s.scene_id);
    if (it == labels.end()) {
      throw DataError("scored scene '" + s.scene_id +
                      "' is not in the manifest");
    }
    examples.push_back({s.scene_id, s.score, it->second});
  }
  if (examples.empty()) throw DataError("no scores to evaluate");

  const double auc_value = auc(examples);
  const F1Result f1 = f1_at(examples, threshold);
  std::printf("auc       %.6f\n", auc_value);
  std::printf("f1        %.6f\n", f1.f1);
  std::printf("precision %.6f\n", f1.precision);
  std::printf("recall    %.6f\n", f1.recall);

  if (!out_path.empty()) {
    ordered_json out;
    out["auc"] = auc_value;
    out["f1"] = f1.f1;
    out["precision"] = f1.precision;
    out["recall"] = f1.recall;
    out["threshold"] = threshold;
    out["tp"] = f1.tp;
    out["fp"] = f1.fp;
    out["fn"] = f1.fn;
    out["tn"] = f1.tn;
    std::ofstream file(out_path);
    if (!file) throw DataError("cannot write " + out_path);
    file << out.dump(2) << "\n";
  }
  return 0;
}

int cmd_inspect(const std::filesystem::path& manifest_path,
                const std::string& scene_id, std::string out_path) {
  const Manifest manifest = read_manifest(manifest_path);
  const SceneLabel* scene = nullptr;
  for (const SceneLabel& s : manifest.scenes) {
    if (s.scene_id == scene_id) {
      scene = &s;
      break;
    }
  }
  if (scene == nullptr) throw DataError("unknown scene '" + scene_id + "'");

  const std::filesystem::path root = manifest_path.parent_path();
  RgbImage image = read_png(root / image_rel_path(scene_id));

  std::printf("scene       %s\n", scene->scene_id.c_str());
  std::printf("classes     ");
  if (scene->present_classes.empty()) std::printf("(none)");
  for (const std::string& c : scene->present_classes) {
    std::printf("%s ", c.c_str());
  }
  std::printf("\n");
  std::printf("annotations %zu, dropped %d, clip fraction %.4f\n",
              scene->annotations.size(), scene->dropped,
              scene->clip_fraction);

  auto to_px = [&](double v) {
    return std::clamp<long>(std::lround(v), 0,
                            static_cast<long>(kImageSize) - 1);
  };
  for (const Annotation& a : scene->annotations) {
    std::printf(
        "  [%d] %s t=[%.3f, %.3f]s f=[%.1f, %.1f]Hz px=(%.1f, %.1f)-(%.1f, "
        "%.1f) snr=%.3f gain=%.4f source=%s",
        a.id, a.class_label.c_str(), a.bbox.t0, a.bbox.t1, a.bbox.f0,
        a.bbox.f1, a.bbox.x0, a.bbox.y0, a.bbox.x1, a.bbox.y1, a.target_snr,
        a.applied_gain, a.source_id.c_str());
    if (!a.merged_from.empty()) {
      std::printf(" merged_from=[");
      for (size_t i = 0; i < a.merged_from.size(); ++i) {
        std::printf("%s%d", i > 0 ? "," : "", a.merged_from[i]);
      }
      std::printf("]");
    }
    std::printf("\n");

    // Mask tint: walk image pixels back to grid cells through the axes.
    const Grid<uint8_t> mask = rle_decode(a.mask_rows, a.mask_cols, a.mask_rle);
    const double bin_hz =
        manifest.axes.f_max / static_cast<double>(a.mask_cols - 1);
    for (size_t r = 0; r < image.rows; ++r) {
      const double hz =
          manifest.axes.y_to_freq(static_cast<double>(r) + 0.5);
      const long bin = std::lround(hz / bin_hz);
      if (bin < 0 || bin >= static_cast<long>(a.mask_cols)) continue;
      for (size_t c = 0; c < image.cols; ++c) {
        const double t =
            manifest.axes.x_to_time(static_cast<double>(c) + 0.5);
        const long frame = static_cast<long>(
            t / manifest.axes.time_span_s * static_cast<double>(a.mask_rows));
        if (frame < 0 || frame >= static_cast<long>(a.mask_rows)) continue;
        if (mask(static_cast<size_t>(frame), static_cast<size_t>(bin)) != 0) {
          uint8_t* px = image.data.data() + (r * image.cols + c) * 3;
          px[1] = static_cast<uint8_t>(std::min(255, px[1] + 80));
        }
      }
    }

    const long x0 = to_px(a.bbox.x0);
    const long x1 = to_px(a.bbox.x1);
    const long y0 = to_px(a.bbox.y0);
    const long y1 = to_px(a.bbox.y1);
    for (long x = x0; x <= x1; ++x) {
      image.set_pixel(static_cast<size_t>(y0), static_cast<size_t>(x), 255, 0, 0);
      image.set_pixel(static_cast<size_t>(y1), static_cast<size_t>(x), 255, 0, 0);
    }
    for (long y = y0; y <= y1; ++y) {
      image.set_pixel(static_cast<size_t>(y), static_cast<size_t>(x0), 255, 0, 0);
      image.set_pixel(static_cast<size_t>(y), static_cast<size_t>(x1), 255, 0, 0);
    }
  }

  if (out_path.empty()) out_path = scene_id + "_overlay.png";
  write_png_rgb(image, out_path);
  std::printf("overlay     %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Labelled bioacoustic soundscape synthesis"};
  app.name("synthscape");
  app.require_subcommand(1);

  SynthFlags synth_flags;
  CLI::App* synth = app.add_subcommand("synth", "Build one dataset");
  add_synth_flags(synth, synth_flags);

  SynthFlags sweep_flags;
  std::string sweep_axis;
  std::vector<double> sweep_values;
  int sweep_replicate = 0;
  CLI::App* sweep =
      app.add_subcommand("sweep", "Build one dataset per axis value");
  add_synth_flags(sweep, sweep_flags);
  sweep->add_option("--axis", sweep_axis, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"n", "s", "snr_min"}));
  sweep->add_option("--values", sweep_values, "Axis values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--replicate", sweep_replicate, "Replicate index");

  std::string iso_catalog;
  std::string iso_out;
  double iso_threshold = kDefaultMaskThresholdDb;
  double iso_gate = kDefaultGateDbfs;
  double iso_over_k = 1.0;
  CLI::App* iso =
      app.add_subcommand("isolate", "Build a vocalisation pool from raw audio");
  iso->add_option("--catalog", iso_catalog, "Isolation catalog file")
      ->required();
  iso->add_option("--out", iso_out, "Pool output directory")->required();
  iso->add_option("--threshold-db", iso_threshold, "Mask threshold (dB)");
  iso->add_option("--gate-dbfs", iso_gate, "RMS gate (dBFS)");
  iso->add_option("--over-k", iso_over_k, "Over-subtraction factor");

  std::string eval_manifest;
  std::string eval_scores;
  double eval_threshold = 0.5;
  std::string eval_out;
  CLI::App* eval = app.add_subcommand("eval", "Score a predictions CSV");
  eval->add_option("--manifest", eval_manifest, "Dataset manifest")
      ->required();
  eval->add_option("--scores", eval_scores, "scene_id,score CSV")->required();
  eval->add_option("--threshold", eval_threshold, "F1 decision threshold");
  eval->add_option("--out", eval_out, "Metrics JSON output path");

  std::string inspect_manifest;
  std::string inspect_scene;
  std::string inspect_out;
  CLI::App* inspect =
      app.add_subcommand("inspect", "Dump a scene and draw its annotations");
  inspect->add_option("--manifest", inspect_manifest, "Dataset manifest")
      ->required();
  inspect->add_option("--scene", inspect_scene, "Scene id")->required();
  inspect->add_option("--out", inspect_out, "Overlay PNG path");

  // CLI11's vector overload consumes arguments back to front.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (synth->parsed()) {
      return cmd_synth(apply_synth_flags(synth, synth_flags));
    }
    if (sweep->parsed()) {
      RunConfig base = apply_synth_flags(sweep, sweep_flags);
      return cmd_sweep(base, sweep_axis, sweep_values, sweep_replicate,
                       base.out);
    }
    if (iso->parsed()) {
      return cmd_isolate(iso_catalog, iso_out, iso_threshold, iso_gate,
                         iso_over_k);
    }
    if (eval->parsed()) {
      return cmd_eval(eval_manifest, eval_scores, eval_threshold, eval_out);
    }
    if (inspect->parsed()) {
      return cmd_inspect(inspect_manifest, inspect_scene, inspect_out);
    }
  } catch (const ConstraintError& e) {
    std::fprintf(stderr, "constraint failure: %s\n", e.what());
    return 3;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return 2;
  }
  return 1;
}

}  // namespace synthscape
