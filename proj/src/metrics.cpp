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

#include "synthscape/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "synthscape/error.hpp"

namespace synthscape {

namespace {

void check_examples(const std::vector<ScoredExample>& examples) {
  for (const ScoredExample& e : examples) {
    if (!std::isfinite(e.score)) {
      throw std::invalid_argument("non-finite score for " + e.scene_id);
    }
    if (e.label != 0 && e.label != 1) {
      throw std::invalid_argument("label must be 0 or 1 for " + e.scene_id);
    }
  }
}

}  // namespace

double auc(const std::vector<ScoredExample>& examples) {
  check_examples(examples);
  size_t n_pos = 0;
  for (const ScoredExample& e : examples) n_pos += static_cast<size_t>(e.label);
  const size_t n_neg = examples.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw std::invalid_argument("auc needs both classes present");
  }

  // Average ranks over tied score groups, then the Mann-Whitney U statistic.
  std::vector<size_t> order(examples.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return examples[a].score < examples[b].score;
  });
  double rank_sum_pos = 0.0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j < order.size() &&
           examples[order[j]].score == examples[order[i]].score) {
      ++j;
    }
    const double avg_rank = (static_cast<double>(i + 1) +
                             static_cast<double>(j)) / 2.0;  // 1-based
    for (size_t k = i; k < j; ++k) {
      if (examples[order[k]].label == 1) rank_sum_pos += avg_rank;
    }
    i = j;
  }
  const double np = static_cast<double>(n_pos);
  const double u = rank_sum_pos - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

F1Result f1_at(const std::vector<ScoredExample>& examples, double threshold) {
  check_examples(examples);
  F1Result r;
  for (const ScoredExample& e : examples) {
    const bool predicted = e.score >= threshold;
    if (predicted && e.label == 1) ++r.tp;
    if (predicted && e.label == 0) ++r.fp;
    if (!predicted && e.label == 1) ++r.fn;
    if (!predicted && e.label == 0) ++r.tn;
  }
  r.precision = (r.tp + r.fp) > 0
                    ? static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp)
                    : 0.0;
  r.recall = (r.tp + r.fn) > 0
                 ? static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn)
                 : 0.0;
  r.f1 = (r.precision + r.recall) > 0.0
             ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  return r;
}

std::vector<Score> read_scores_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<Score> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw DataError("expected 'scene_id,score' in " + path.string());
    }
    Score s;
    s.scene_id = line.substr(0, comma);
    const std::string value = line.substr(comma + 1);
    try {
      size_t used = 0;
      s.score = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      if (first) {
        first = false;
        continue;  // header row
      }
      throw DataError("bad score '" + value + "' in " + path.string());
    }
    first = false;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace synthscape
