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

#include "synthscape/rle.hpp"

#include <stdexcept>

namespace synthscape {

std::vector<uint64_t> rle_encode(const Grid<uint8_t>& mask) {
  std::vector<uint64_t> counts;
  bool current = false;
  uint64_t run = 0;
  for (uint8_t v : mask.storage()) {
    const bool bit = v != 0;
    if (bit == current) {
      ++run;
    } else {
      counts.push_back(run);
      current = bit;
      run = 1;
    }
  }
  if (run > 0) counts.push_back(run);
  return counts;
}

Grid<uint8_t> rle_decode(size_t rows, size_t cols,
                         const std::vector<uint64_t>& counts) {
  Grid<uint8_t> mask(rows, cols, 0);
  size_t pos = 0;
  bool current = false;
  for (uint64_t run : counts) {
    if (pos + run > mask.size()) {
      throw std::invalid_argument("rle counts exceed grid size");
    }
    if (current) {
      for (uint64_t i = 0; i < run; ++i) mask.storage()[pos + i] = 1;
    }
    pos += run;
    current = !current;
  }
  if (pos != mask.size()) {
    throw std::invalid_argument("rle counts do not cover the grid");
  }
  return mask;
}

}  // namespace synthscape
