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

#include "synthscape/audio.hpp"

namespace synthscape {

/// Band-limited sample rate conversion: windowed-sinc interpolation with
/// 64 taps per output sample (Kaiser window, beta = 8). When downsampling
/// the kernel is stretched to cut off at the lower Nyquist. A clip already
/// at the target rate is returned unchanged.
AudioClip resample(const AudioClip& clip, int target_rate);

}  // namespace synthscape
