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

#include "synthscape/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "synthscape/error.hpp"

namespace synthscape {

namespace {

constexpr uint16_t kFormatPcm = 0x0001;
constexpr uint16_t kFormatFloat = 0x0003;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xFF));
  out.push_back(static_cast<uint8_t>((v >> 16) & 0xFF));
  out.push_back(static_cast<uint8_t>((v >> 24) & 0xFF));
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xFF));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xFF));
}

void put_tag(std::vector<uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

struct FmtInfo {
  uint16_t format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits = 0;
};

}  // namespace

AudioClip read_audio(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("read_audio: cannot open " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError("read_audio: not a RIFF/WAVE file: " + path.string());
  }

  FmtInfo fmt;
  bool have_fmt = false;
  const uint8_t* data_ptr = nullptr;
  size_t data_len = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* tag = reinterpret_cast<const char*>(bytes.data() + pos);
    const uint32_t chunk_len = read_u32(bytes.data() + pos + 4);
    const size_t body = pos + 8;
    if (body + chunk_len > bytes.size()) {
      throw DataError("read_audio: truncated chunk in " + path.string());
    }
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (chunk_len < 16) throw DataError("read_audio: short fmt chunk");
      fmt.format = read_u16(bytes.data() + body);
      fmt.channels = read_u16(bytes.data() + body + 2);
      fmt.sample_rate = read_u32(bytes.data() + body + 4);
      fmt.bits = read_u16(bytes.data() + body + 14);
      if (fmt.format == kFormatExtensible && chunk_len >= 40) {
        // SubFormat GUID starts with the base format code.
        fmt.format = read_u16(bytes.data() + body + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data_ptr = bytes.data() + body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data_ptr == nullptr) {
    throw DataError("read_audio: missing fmt or data chunk in " + path.string());
  }
  if (fmt.channels == 0 || fmt.sample_rate == 0) {
    throw DataError("read_audio: invalid fmt chunk in " + path.string());
  }

  const bool pcm16 = fmt.format == kFormatPcm && fmt.bits == 16;
  const bool pcm24 = fmt.format == kFormatPcm && fmt.bits == 24;
  const bool f32 = fmt.format == kFormatFloat && fmt.bits == 32;
  if (!pcm16 && !pcm24 && !f32) {
    throw DataError("read_audio: unsupported encoding (format=" +
                    std::to_string(fmt.format) +
                    ", bits=" + std::to_string(fmt.bits) + ") in " +
                    path.string());
  }

  const size_t bytes_per_sample = fmt.bits / 8;
  const size_t frame_bytes = bytes_per_sample * fmt.channels;
  if (data_len % frame_bytes != 0) {
    throw DataError("read_audio: truncated sample data in " + path.string());
  }
  const size_t num_frames = data_len / frame_bytes;

  AudioClip clip;
  clip.sample_rate = static_cast<int>(fmt.sample_rate);
  clip.source_id = path.stem().string();
  clip.samples.resize(num_frames);

  const double inv_channels = 1.0 / fmt.channels;
  for (size_t i = 0; i < num_frames; ++i) {
    double acc = 0.0;
    const uint8_t* frame = data_ptr + i * frame_bytes;
    for (uint16_t c = 0; c < fmt.channels; ++c) {
      const uint8_t* p = frame + c * bytes_per_sample;
      if (pcm16) {
        const int16_t v = static_cast<int16_t>(p[0] | (p[1] << 8));
        acc += v / 32768.0;
      } else if (pcm24) {
        int32_t v = static_cast<int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
        if (v & 0x800000) v -= 0x1000000;
        acc += v / 8388608.0;
      } else {
        float v;
        std::memcpy(&v, p, 4);
        acc += v;
      }
    }
    clip.samples[i] = acc * inv_channels;
  }
  return clip;
}

void write_audio(const AudioClip& clip, const std::filesystem::path& path,
                 WavEncoding encoding) {
  if (clip.samples.empty()) {
    throw std::invalid_argument("write_audio: empty clip");
  }
  const bool f32 = encoding == WavEncoding::kFloat32;
  const uint16_t bits = f32 ? 32 : 16;
  const uint32_t data_len =
      static_cast<uint32_t>(clip.samples.size() * (bits / 8));

  std::vector<uint8_t> out;
  out.reserve(44 + data_len);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_len);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, f32 ? kFormatFloat : kFormatPcm);
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<uint32_t>(clip.sample_rate));
  put_u32(out, static_cast<uint32_t>(clip.sample_rate) * (bits / 8));
  put_u16(out, bits / 8);
  put_u16(out, bits);
  put_tag(out, "data");
  put_u32(out, data_len);

  if (f32) {
    for (double s : clip.samples) {
      const float v = static_cast<float>(s);
      const uint8_t* p = reinterpret_cast<const uint8_t*>(&v);
      out.insert(out.end(), p, p + 4);
    }
  } else {
    for (double s : clip.samples) {
      long q = std::lround(s * 32768.0);
      q = std::clamp(q, -32768l, 32767l);
      put_u16(out, static_cast<uint16_t>(static_cast<int16_t>(q)));
    }
  }

  std::ofstream of(path, std::ios::binary | std::ios::trunc);
  if (!of) throw DataError("write_audio: cannot open " + path.string());
  of.write(reinterpret_cast<const char*>(out.data()),
           static_cast<std::streamsize>(out.size()));
  if (!of) throw DataError("write_audio: write failed for " + path.string());
}

}  // namespace synthscape
