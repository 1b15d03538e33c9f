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
#include <filesystem>
#include <vector>

#include "synthscape/grid.hpp"
#include "synthscape/render.hpp"

namespace synthscape {

/// Interleaved 8-bit RGB raster, row-major from the top-left corner.
struct RgbImage {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<uint8_t> data;  // rows * cols * 3 bytes

  static RgbImage from_gray(const Grid<uint8_t>& gray);
  void set_pixel(size_t r, size_t c, uint8_t red, uint8_t green, uint8_t blue);
};

void write_png_gray(const Grid<uint8_t>& pixels,
                    const std::filesystem::path& path);
void write_png_rgb(const RgbImage& image, const std::filesystem::path& path);

/// Reads an 8-bit grayscale or RGB PNG; grayscale is expanded to RGB.
RgbImage read_png(const std::filesystem::path& path);

/// Raw matrix dump for external verification: magic "SSM1", uint32 rows,
/// uint32 cols, float64 time_span_s / f_min / f_max, then row-major float32
/// values. All fields little-endian.
void write_raw_matrix(const Grid<double>& values, const AxisMap& axes,
                      const std::filesystem::path& path);
Grid<double> read_raw_matrix(const std::filesystem::path& path, AxisMap* axes);

}  // namespace synthscape
