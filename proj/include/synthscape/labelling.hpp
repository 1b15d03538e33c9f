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

#include <cstdint>
#include <string>
#include <vector>

#include "synthscape/grid.hpp"
#include "synthscape/isolation.hpp"
#include "synthscape/render.hpp"
#include "synthscape/stft.hpp"

namespace synthscape {

/// Time-frequency box plus its projection into image pixels. Pixel
/// coordinates are continuous; y grows downward so y0 (top) corresponds to
/// f1 and y1 (bottom) to f0.
struct BBox {
  double t0 = 0.0;
  double t1 = 0.0;
  double f0 = 0.0;
  double f1 = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;
};

struct Annotation {
  int id = 0;
  std::string class_label;
  BBox bbox;
  size_t mask_rows = 0;
  size_t mask_cols = 0;
  std::vector<uint64_t> mask_rle;
  double target_snr = 0.0;
  double applied_gain = 0.0;
  std::string source_id;
  std::vector<int> merged_from;  // empty if unmerged
};

struct SceneLabel {
  std::string scene_id;
  std::vector<std::string> present_classes;  // sorted, unique
  std::vector<Annotation> annotations;
  double clip_fraction = 0.0;
  int dropped = 0;  // drowned placements removed from this scene
};

constexpr double kDefaultVisibilityBeta = 1.0;
constexpr double kDefaultIouThresh = 0.25;
constexpr double kDefaultIrsThresh = 0.9;

/// Translates the source mask to the placement offset (nearest frame) and
/// keeps cells where gain^2 * P_voc >= beta * P_bg. May come back empty when
/// the background drowns the vocalisation everywhere.
Grid<uint8_t> dynamic_mask(const Grid<uint8_t>& source_mask,
                           const PowerSpectrogram& voc_power, double gain,
                           double offset_s, const PowerSpectrogram& bg_spec,
                           double beta = kDefaultVisibilityBeta);

/// Tight box of the true cells; pixel coordinates projected through `axes`.
BBox bbox_of(const Grid<uint8_t>& mask, const StftParams& params,
             int sample_rate, const AxisMap& axes);

/// Overlap ratios on time-frequency areas; disjoint boxes give 0.
double iou(const BBox& a, const BBox& b);
double irs(const BBox& a, const BBox& b);

/// Merges same-class pairs with iou > iou_thresh or irs > irs_thresh into
/// their rectangular hull (masks unioned) until a fixpoint. The survivor
/// keeps the lowest id and its snr/gain/source fields; merged_from lists all
/// constituent ids.
std::vector<Annotation> merge_boxes(std::vector<Annotation> annotations,
                                    double iou_thresh = kDefaultIouThresh,
                                    double irs_thresh = kDefaultIrsThresh);

/// One vocalisation placement as realized in a scene.
struct PlacedVocal {
  const IsolatedVocalisation* voc = nullptr;
  const PowerSpectrogram* voc_power = nullptr;
  double offset_s = 0.0;
  double applied_gain = 0.0;
  double target_snr = 0.0;
};

struct AnnotationResult {
  std::vector<Annotation> annotations;
  int dropped = 0;
};

/// Builds per-placement annotations against the augmented-background
/// spectrogram, drops drowned placements, then merges.
AnnotationResult build_annotations(const std::vector<PlacedVocal>& placements,
                                   const PowerSpectrogram& bg_spec,
                                   const AxisMap& axes,
                                   double beta = kDefaultVisibilityBeta,
                                   double iou_thresh = kDefaultIouThresh,
                                   double irs_thresh = kDefaultIrsThresh);

/// Sorted unique class labels of the annotations.
std::vector<std::string> present_classes(
    const std::vector<Annotation>& annotations);

}  // namespace synthscape
