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

#include <filesystem>

#include "synthscape/audio.hpp"

namespace synthscape {

enum class WavEncoding { kPcm16, kFloat32 };

/// Reads a RIFF/WAVE file (16/24-bit PCM or 32-bit float). Multichannel
/// input is mixed down to mono by per-sample channel average; samples are
/// scaled into [-1, 1]. Throws DataError for anything else.
AudioClip read_audio(const std::filesystem::path& path);

/// Writes a mono WAV file. Float32 is lossless; pcm16 quantizes with
/// rounding (error at most 1/32768 after the [-1, 1] clamp).
void write_audio(const AudioClip& clip, const std::filesystem::path& path,
                 WavEncoding encoding);

}  // namespace synthscape
