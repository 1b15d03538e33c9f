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

#include "synthscape/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

#include "synthscape/error.hpp"

namespace synthscape {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f != nullptr) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.string().c_str(), mode));
  if (!f) throw DataError("cannot open " + path.string());
  return f;
}

void write_png_impl(const std::filesystem::path& path, size_t rows,
                    size_t cols, int color_type, const uint8_t* data,
                    size_t stride) {
  FilePtr f = open_file(path, "wb");
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw std::runtime_error("png_create_write_struct");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_write_struct(&png, nullptr);
    throw std::runtime_error("png_create_info_struct");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw DataError("png write failed for " + path.string());
  }
  png_init_io(png, f.get());
  // Fixed compression settings keep the output byte-stable across runs.
  png_set_compression_level(png, 6);
  png_set_IHDR(png, info, static_cast<png_uint_32>(cols),
               static_cast<png_uint_32>(rows), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (size_t r = 0; r < rows; ++r) {
    png_write_row(png, const_cast<png_bytep>(data + r * stride));
  }
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

RgbImage RgbImage::from_gray(const Grid<uint8_t>& gray) {
  RgbImage out;
  out.rows = gray.rows();
  out.cols = gray.cols();
  out.data.resize(out.rows * out.cols * 3);
  for (size_t i = 0; i < gray.size(); ++i) {
    const uint8_t v = gray.storage()[i];
    out.data[3 * i] = v;
    out.data[3 * i + 1] = v;
    out.data[3 * i + 2] = v;
  }
  return out;
}

void RgbImage::set_pixel(size_t r, size_t c, uint8_t red, uint8_t green,
                         uint8_t blue) {
  if (r >= rows || c >= cols) return;
  uint8_t* px = data.data() + (r * cols + c) * 3;
  px[0] = red;
  px[1] = green;
  px[2] = blue;
}

void write_png_gray(const Grid<uint8_t>& pixels,
                    const std::filesystem::path& path) {
  if (pixels.empty()) throw std::invalid_argument("empty image");
  write_png_impl(path, pixels.rows(), pixels.cols(), PNG_COLOR_TYPE_GRAY,
                 pixels.data(), pixels.cols());
}

void write_png_rgb(const RgbImage& image, const std::filesystem::path& path) {
  if (image.data.size() != image.rows * image.cols * 3) {
    throw std::invalid_argument("inconsistent RGB buffer");
  }
  write_png_impl(path, image.rows, image.cols, PNG_COLOR_TYPE_RGB,
                 image.data.data(), image.cols * 3);
}

RgbImage read_png(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb");
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (png == nullptr) throw std::runtime_error("png_create_read_struct");
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw std::runtime_error("png_create_info_struct");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError("png read failed for " + path.string());
  }
  png_init_io(png, f.get());
  png_read_info(png, info);

  png_set_expand(png);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);

  RgbImage out;
  out.rows = png_get_image_height(png, info);
  out.cols = png_get_image_width(png, info);
  if (png_get_rowbytes(png, info) != out.cols * 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DataError("unsupported png layout in " + path.string());
  }
  out.data.resize(out.rows * out.cols * 3);
  for (size_t r = 0; r < out.rows; ++r) {
    png_read_row(png, out.data.data() + r * out.cols * 3, nullptr);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

void write_raw_matrix(const Grid<double>& values, const AxisMap& axes,
                      const std::filesystem::path& path) {
  FilePtr f = open_file(path, "wb");
  const char magic[4] = {'S', 'S', 'M', '1'};
  const uint32_t rows = static_cast<uint32_t>(values.rows());
  const uint32_t cols = static_cast<uint32_t>(values.cols());
  const double meta[3] = {axes.time_span_s, axes.f_min, axes.f_max};
  std::fwrite(magic, 1, 4, f.get());
  std::fwrite(&rows, 4, 1, f.get());
  std::fwrite(&cols, 4, 1, f.get());
  std::fwrite(meta, 8, 3, f.get());
  std::vector<float> row(values.cols());
  for (size_t r = 0; r < values.rows(); ++r) {
    const double* src = values.row(r);
    for (size_t c = 0; c < values.cols(); ++c) {
      row[c] = static_cast<float>(src[c]);
    }
    if (std::fwrite(row.data(), 4, row.size(), f.get()) != row.size()) {
      throw DataError("short write to " + path.string());
    }
  }
}

Grid<double> read_raw_matrix(const std::filesystem::path& path,
                             AxisMap* axes) {
  FilePtr f = open_file(path, "rb");
  char magic[4];
  uint32_t rows = 0;
  uint32_t cols = 0;
  double meta[3];
  if (std::fread(magic, 1, 4, f.get()) != 4 ||
      std::memcmp(magic, "SSM1", 4) != 0) {
    throw DataError("bad matrix magic in " + path.string());
  }
  if (std::fread(&rows, 4, 1, f.get()) != 1 ||
      std::fread(&cols, 4, 1, f.get()) != 1 ||
      std::fread(meta, 8, 3, f.get()) != 3) {
    throw DataError("truncated matrix header in " + path.string());
  }
  if (axes != nullptr) {
    axes->time_span_s = meta[0];
    axes->f_min = meta[1];
    axes->f_max = meta[2];
  }
  Grid<double> out(rows, cols);
  std::vector<float> row(cols);
  for (uint32_t r = 0; r < rows; ++r) {
    if (std::fread(row.data(), 4, cols, f.get()) != cols) {
      throw DataError("truncated matrix body in " + path.string());
    }
    for (uint32_t c = 0; c < cols; ++c) out(r, c) = row[c];
  }
  return out;
}

}  // namespace synthscape
