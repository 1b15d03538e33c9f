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
#include <vector>

#include "synthscape/grid.hpp"

namespace synthscape {

/// Run-length counts over the row-major flattening of a boolean grid,
/// alternating runs starting with a (possibly zero-length) false run.
std::vector<uint64_t> rle_encode(const Grid<uint8_t>& mask);

/// Inverse of rle_encode; the counts must sum to rows * cols.
Grid<uint8_t> rle_decode(size_t rows, size_t cols,
                         const std::vector<uint64_t>& counts);

}  // namespace synthscape
