# Copyright 2026 The Synthscape Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Labelled bioacoustic soundscape synthesis."""

from synthscape._core import (
    AxisMap,
    ConstraintError,
    DataError,
    PcenParams,
    RenderParams,
    StftParams,
    auc,
    f1_at,
    istft_roundtrip,
    pcen,
    read_audio,
    render_image,
    run_cli,
    stft_power,
    write_audio,
)

__all__ = [
    "AxisMap",
    "ConstraintError",
    "DataError",
    "PcenParams",
    "RenderParams",
    "StftParams",
    "auc",
    "f1_at",
    "istft_roundtrip",
    "pcen",
    "read_audio",
    "render_image",
    "run_cli",
    "stft_power",
    "write_audio",
]
