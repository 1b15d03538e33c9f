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

#include "synthscape/labelling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "synthscape/rle.hpp"

namespace synthscape {

namespace {

double box_area(const BBox& b) { return (b.t1 - b.t0) * (b.f1 - b.f0); }

double intersection_area(const BBox& a, const BBox& b) {
  const double t = std::min(a.t1, b.t1) - std::max(a.t0, b.t0);
  const double f = std::min(a.f1, b.f1) - std::max(a.f0, b.f0);
  if (t <= 0.0 || f <= 0.0) return 0.0;
  return t * f;
}

std::vector<int> constituent_ids(const Annotation& a) {
  if (a.merged_from.empty()) return {a.id};
  return a.merged_from;
}

void merge_into(Annotation& dst, const Annotation& src) {
  dst.bbox.t0 = std::min(dst.bbox.t0, src.bbox.t0);
  dst.bbox.t1 = std::max(dst.bbox.t1, src.bbox.t1);
  dst.bbox.f0 = std::min(dst.bbox.f0, src.bbox.f0);
  dst.bbox.f1 = std::max(dst.bbox.f1, src.bbox.f1);
  // The axis maps are monotone, so the pixel hull mirrors the physical hull.
  dst.bbox.x0 = std::min(dst.bbox.x0, src.bbox.x0);
  dst.bbox.x1 = std::max(dst.bbox.x1, src.bbox.x1);
  dst.bbox.y0 = std::min(dst.bbox.y0, src.bbox.y0);
  dst.bbox.y1 = std::max(dst.bbox.y1, src.bbox.y1);

  std::vector<int> ids = constituent_ids(dst);
  const std::vector<int> other = constituent_ids(src);
  ids.insert(ids.end(), other.begin(), other.end());
  std::sort(ids.begin(), ids.end());
  dst.merged_from = std::move(ids);

  if (dst.mask_rows == src.mask_rows && dst.mask_cols == src.mask_cols) {
    Grid<uint8_t> a = rle_decode(dst.mask_rows, dst.mask_cols, dst.mask_rle);
    const Grid<uint8_t> b =
        rle_decode(src.mask_rows, src.mask_cols, src.mask_rle);
    for (size_t i = 0; i < a.size(); ++i) {
      if (b.storage()[i] != 0) a.storage()[i] = 1;
    }
    dst.mask_rle = rle_encode(a);
  }
}

}  // namespace

Grid<uint8_t> dynamic_mask(const Grid<uint8_t>& source_mask,
                           const PowerSpectrogram& voc_power, double gain,
                           double offset_s, const PowerSpectrogram& bg_spec,
                           double beta) {
  if (source_mask.rows() != voc_power.num_frames() ||
      source_mask.cols() != voc_power.num_bins()) {
    throw std::invalid_argument("source mask does not match its spectrogram");
  }
  if (source_mask.cols() != bg_spec.num_bins()) {
    throw std::invalid_argument("vocalisation and scene bin counts differ");
  }

  const long scene_frames = static_cast<long>(bg_spec.num_frames());
  const long voc_frames = static_cast<long>(source_mask.rows());
  const long shift =
      placement_frame_shift(offset_s, bg_spec.sample_rate, bg_spec.params,
                            voc_frames, scene_frames);

  Grid<uint8_t> out(bg_spec.num_frames(), bg_spec.num_bins(), 0);
  const double g2 = gain * gain;
  for (long u = 0; u < voc_frames; ++u) {
    const long t = shift + u;
    if (t >= scene_frames) break;
    const uint8_t* src = source_mask.row(static_cast<size_t>(u));
    const double* pv = voc_power.values.row(static_cast<size_t>(u));
    const double* pb = bg_spec.values.row(static_cast<size_t>(t));
    uint8_t* dst = out.row(static_cast<size_t>(t));
    for (size_t f = 0; f < source_mask.cols(); ++f) {
      if (src[f] != 0 && g2 * pv[f] >= beta * pb[f]) dst[f] = 1;
    }
  }
  return out;
}

BBox bbox_of(const Grid<uint8_t>& mask, const StftParams& params,
             int sample_rate, const AxisMap& axes) {
  size_t t_lo = mask.rows();
  size_t t_hi = 0;
  size_t f_lo = mask.cols();
  size_t f_hi = 0;
  bool any = false;
  for (size_t t = 0; t < mask.rows(); ++t) {
    const uint8_t* row = mask.row(t);
    for (size_t f = 0; f < mask.cols(); ++f) {
      if (row[f] == 0) continue;
      any = true;
      t_lo = std::min(t_lo, t);
      t_hi = std::max(t_hi, t);
      f_lo = std::min(f_lo, f);
      f_hi = std::max(f_hi, f);
    }
  }
  if (!any) throw std::invalid_argument("bbox of an empty mask");

  const double sr = static_cast<double>(sample_rate);
  const double bin_hz = sr / params.fft_size;
  BBox box;
  box.t0 = static_cast<double>(t_lo) * params.hop / sr;
  box.t1 =
      (static_cast<double>(t_hi) * params.hop + params.window_size) / sr;
  box.f0 = std::max(0.0, (static_cast<double>(f_lo) - 0.5) * bin_hz);
  box.f1 = std::min(sr / 2.0, (static_cast<double>(f_hi) + 0.5) * bin_hz);
  box.x0 = axes.time_to_x(box.t0);
  box.x1 = axes.time_to_x(box.t1);
  box.y0 = axes.freq_to_y(box.f1);
  box.y1 = axes.freq_to_y(box.f0);
  return box;
}

double iou(const BBox& a, const BBox& b) {
  const double inter = intersection_area(a, b);
  if (inter <= 0.0) return 0.0;
  return inter / (box_area(a) + box_area(b) - inter);
}

double irs(const BBox& a, const BBox& b) {
  const double inter = intersection_area(a, b);
  if (inter <= 0.0) return 0.0;
  return inter / std::min(box_area(a), box_area(b));
}

std::vector<Annotation> merge_boxes(std::vector<Annotation> annotations,
                                    double iou_thresh, double irs_thresh) {
  std::sort(annotations.begin(), annotations.end(),
            [](const Annotation& a, const Annotation& b) { return a.id < b.id; });
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t i = 0; i < annotations.size() && !merged; ++i) {
      for (size_t j = i + 1; j < annotations.size(); ++j) {
        if (annotations[i].class_label != annotations[j].class_label) continue;
        const BBox& a = annotations[i].bbox;
        const BBox& b = annotations[j].bbox;
        if (iou(a, b) > iou_thresh || irs(a, b) > irs_thresh) {
          merge_into(annotations[i], annotations[j]);
          annotations.erase(annotations.begin() + static_cast<long>(j));
          merged = true;
          break;
        }
      }
    }
  }
  return annotations;
}

AnnotationResult build_annotations(const std::vector<PlacedVocal>& placements,
                                   const PowerSpectrogram& bg_spec,
                                   const AxisMap& axes, double beta,
                                   double iou_thresh, double irs_thresh) {
  AnnotationResult result;
  int next_id = 0;
  for (const PlacedVocal& p : placements) {
    const Grid<uint8_t> mask =
        dynamic_mask(p.voc->source_mask, *p.voc_power, p.applied_gain,
                     p.offset_s, bg_spec, beta);
    const int id = next_id++;
    const bool any =
        std::any_of(mask.storage().begin(), mask.storage().end(),
                    [](uint8_t v) { return v != 0; });
    if (!any) {
      ++result.dropped;
      continue;
    }
    Annotation ann;
    ann.id = id;
    ann.class_label = p.voc->class_label;
    ann.bbox = bbox_of(mask, bg_spec.params, bg_spec.sample_rate, axes);
    ann.mask_rows = mask.rows();
    ann.mask_cols = mask.cols();
    ann.mask_rle = rle_encode(mask);
    ann.target_snr = p.target_snr;
    ann.applied_gain = p.applied_gain;
    ann.source_id = p.voc->clip.source_id;
    result.annotations.push_back(std::move(ann));
  }
  result.annotations = merge_boxes(std::move(result.annotations), iou_thresh,
                                   irs_thresh);
  return result;
}

std::vector<std::string> present_classes(
    const std::vector<Annotation>& annotations) {
  std::set<std::string> classes;
  for (const Annotation& a : annotations) classes.insert(a.class_label);
  return {classes.begin(), classes.end()};
}

}  // namespace synthscape
