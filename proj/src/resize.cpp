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

#include "synthscape/resize.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace synthscape {

namespace {

constexpr int kLanczosA = 3;

// One output tap: contributing source index range plus normalized weights.
struct TapSet {
  long first = 0;
  std::vector<double> weights;
};

std::vector<TapSet> plan_axis(size_t in_len, size_t out_len) {
  const double scale =
      static_cast<double>(in_len) / static_cast<double>(out_len);
  // Stretch the kernel when minifying so it averages over `scale` samples.
  const double stretch = scale > 1.0 ? scale : 1.0;
  const double support = kLanczosA * stretch;

  std::vector<TapSet> taps(out_len);
  for (size_t j = 0; j < out_len; ++j) {
    const double center = (static_cast<double>(j) + 0.5) * scale - 0.5;
    const long first = static_cast<long>(std::ceil(center - support));
    const long last = static_cast<long>(std::floor(center + support));
    TapSet& t = taps[j];
    t.first = first;
    t.weights.resize(static_cast<size_t>(last - first + 1));
    double sum = 0.0;
    for (long i = first; i <= last; ++i) {
      const double w =
          lanczos((static_cast<double>(i) - center) / stretch, kLanczosA);
      t.weights[static_cast<size_t>(i - first)] = w;
      sum += w;
    }
    if (sum != 0.0) {
      for (double& w : t.weights) w /= sum;
    }
  }
  return taps;
}

long clamp_index(long i, size_t len) {
  if (i < 0) return 0;
  if (i >= static_cast<long>(len)) return static_cast<long>(len) - 1;
  return i;
}

}  // namespace

double lanczos(double x, int a) {
  if (x == 0.0) return 1.0;
  if (std::abs(x) >= static_cast<double>(a)) return 0.0;
  const double px = std::numbers::pi * x;
  return static_cast<double>(a) * std::sin(px) * std::sin(px / a) / (px * px);
}

Grid<double> lanczos_resize(const Grid<double>& in, size_t out_rows,
                            size_t out_cols) {
  if (in.empty()) throw std::invalid_argument("cannot resize an empty grid");
  if (out_rows == 0 || out_cols == 0) {
    throw std::invalid_argument("output dimensions must be positive");
  }

  const std::vector<TapSet> col_taps = plan_axis(in.cols(), out_cols);
  Grid<double> horiz(in.rows(), out_cols);
  for (size_t r = 0; r < in.rows(); ++r) {
    const double* src = in.row(r);
    double* dst = horiz.row(r);
    for (size_t j = 0; j < out_cols; ++j) {
      const TapSet& t = col_taps[j];
      double acc = 0.0;
      for (size_t k = 0; k < t.weights.size(); ++k) {
        const long i = clamp_index(t.first + static_cast<long>(k), in.cols());
        acc += t.weights[k] * src[i];
      }
      dst[j] = acc;
    }
  }

  const std::vector<TapSet> row_taps = plan_axis(in.rows(), out_rows);
  Grid<double> out(out_rows, out_cols);
  for (size_t r = 0; r < out_rows; ++r) {
    const TapSet& t = row_taps[r];
    double* dst = out.row(r);
    for (size_t j = 0; j < out_cols; ++j) dst[j] = 0.0;
    for (size_t k = 0; k < t.weights.size(); ++k) {
      const long i = clamp_index(t.first + static_cast<long>(k), in.rows());
      const double* src = horiz.row(static_cast<size_t>(i));
      const double w = t.weights[k];
      for (size_t j = 0; j < out_cols; ++j) dst[j] += w * src[j];
    }
  }
  return out;
}

}  // namespace synthscape
