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

#include "synthscape/grid.hpp"

namespace synthscape {

/// Lanczos kernel with support a: sinc(x) * sinc(x / a) for |x| < a.
double lanczos(double x, int a);

/// Separable Lanczos (a = 3) resize with center-aligned sample mapping
/// (source position of output pixel j is (j + 0.5) * in / out - 0.5).
/// Edges are handled by clamping and per-pixel weight normalization. When
/// shrinking an axis the kernel is stretched by the scale factor so it acts
/// as a low-pass filter.
Grid<double> lanczos_resize(const Grid<double>& in, size_t out_rows,
                            size_t out_cols);

}  // namespace synthscape
