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

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace synthscape {

struct ScoredExample {
  std::string scene_id;
  double score = 0.0;
  int label = 0;  // 0 or 1
};

/// Mann-Whitney statistic: the fraction of (positive, negative) pairs ranked
/// correctly, ties counted half. Needs both classes present.
double auc(const std::vector<ScoredExample>& examples);

struct F1Result {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  size_t tn = 0;
};

/// Predict positive iff score >= threshold; zero denominators give 0.
F1Result f1_at(const std::vector<ScoredExample>& examples,
               double threshold = 0.5);

struct Score {
  std::string scene_id;
  double score = 0.0;
};

/// Two-column CSV (scene_id, score); a non-numeric first row is treated as a
/// header and skipped.
std::vector<Score> read_scores_csv(const std::filesystem::path& path);

}  // namespace synthscape
