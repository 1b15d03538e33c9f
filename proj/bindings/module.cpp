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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "synthscape/audio.hpp"
#include "synthscape/cli.hpp"
#include "synthscape/error.hpp"
#include "synthscape/grid.hpp"
#include "synthscape/metrics.hpp"
#include "synthscape/pcen.hpp"
#include "synthscape/render.hpp"
#include "synthscape/stft.hpp"
#include "synthscape/wav.hpp"

namespace py = pybind11;
using namespace synthscape;

namespace {

template <typename T>
py::array_t<T> grid_to_array(const Grid<T>& grid) {
  py::array_t<T> out({grid.rows(), grid.cols()});
  std::memcpy(out.mutable_data(), grid.data(), grid.size() * sizeof(T));
  return out;
}

template <typename T>
Grid<T> array_to_grid(const py::array_t<T, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2) throw std::invalid_argument("expected a 2-d array");
  Grid<T> grid(static_cast<size_t>(arr.shape(0)), static_cast<size_t>(arr.shape(1)));
  std::memcpy(grid.data(), arr.data(), grid.size() * sizeof(T));
  return grid;
}

AudioClip clip_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& samples,
                          int sample_rate) {
  if (samples.ndim() != 1) throw std::invalid_argument("expected mono samples");
  AudioClip clip;
  clip.sample_rate = sample_rate;
  clip.samples.assign(samples.data(), samples.data() + samples.shape(0));
  return clip;
}

py::array_t<double> samples_to_array(const AudioClip& clip) {
  py::array_t<double> out({clip.samples.size()});
  std::memcpy(out.mutable_data(), clip.samples.data(),
              clip.samples.size() * sizeof(double));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Labelled bioacoustic soundscape synthesis core";

  py::register_exception<DataError>(m, "DataError");
  py::register_exception<ConstraintError>(m, "ConstraintError");

  py::class_<StftParams>(m, "StftParams")
      .def(py::init<>())
      .def_readwrite("fft_size", &StftParams::fft_size)
      .def_readwrite("window_size", &StftParams::window_size)
      .def_readwrite("hop", &StftParams::hop)
      .def("num_bins", &StftParams::num_bins);

  py::class_<PcenParams>(m, "PcenParams")
      .def(py::init<>())
      .def_readwrite("smoothing", &PcenParams::smoothing)
      .def_readwrite("alpha", &PcenParams::alpha)
      .def_readwrite("delta", &PcenParams::delta)
      .def_readwrite("root", &PcenParams::root)
      .def_readwrite("eps", &PcenParams::eps);

  py::class_<AxisMap>(m, "AxisMap")
      .def_readonly("time_span_s", &AxisMap::time_span_s)
      .def_readonly("f_min", &AxisMap::f_min)
      .def_readonly("f_max", &AxisMap::f_max)
      .def("time_to_x", &AxisMap::time_to_x)
      .def("x_to_time", &AxisMap::x_to_time)
      .def("freq_to_y", &AxisMap::freq_to_y)
      .def("y_to_freq", &AxisMap::y_to_freq);

  py::class_<RenderParams>(m, "RenderParams")
      .def(py::init<>())
      .def_readwrite("pcen", &RenderParams::pcen)
      .def_readwrite("f_min", &RenderParams::f_min)
      .def_readwrite("f_max", &RenderParams::f_max)
      .def_readwrite("log_bins", &RenderParams::log_bins);

  m.def(
      "stft_power",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& samples,
         int sample_rate, const StftParams& params) {
        return grid_to_array(stft_power(clip_from_array(samples, sample_rate), params).values);
      },
      py::arg("samples"), py::arg("sample_rate"), py::arg("params") = StftParams{},
      "Power spectrogram, frames by bins.");

  m.def(
      "istft_roundtrip",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& samples,
         int sample_rate, const StftParams& params) {
        return samples_to_array(
            istft(stft_complex(clip_from_array(samples, sample_rate), params)));
      },
      py::arg("samples"), py::arg("sample_rate"), py::arg("params") = StftParams{},
      "Analysis followed by synthesis; trims to whole frames.");

  m.def(
      "pcen",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& power,
         const PcenParams& params) { return grid_to_array(pcen(array_to_grid(power), params)); },
      py::arg("power"), py::arg("params") = PcenParams{});

  m.def(
      "render_image",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& samples,
         int sample_rate, const RenderParams& params) {
        const SpectroImage image =
            render_image(stft_power(clip_from_array(samples, sample_rate)), params);
        return py::make_tuple(grid_to_array(image.pixels), image.axes);
      },
      py::arg("samples"), py::arg("sample_rate"), py::arg("params") = RenderParams{},
      "Returns (uint8 pixels, axis map).");

  m.def(
      "auc",
      [](const std::vector<double>& scores, const std::vector<int>& labels) {
        if (scores.size() != labels.size()) {
          throw std::invalid_argument("scores and labels differ in length");
        }
        std::vector<ScoredExample> examples(scores.size());
        for (size_t i = 0; i < scores.size(); ++i) {
          examples[i] = {"", scores[i], labels[i]};
        }
        return auc(examples);
      },
      py::arg("scores"), py::arg("labels"));

  m.def(
      "f1_at",
      [](const std::vector<double>& scores, const std::vector<int>& labels, double threshold) {
        if (scores.size() != labels.size()) {
          throw std::invalid_argument("scores and labels differ in length");
        }
        std::vector<ScoredExample> examples(scores.size());
        for (size_t i = 0; i < scores.size(); ++i) {
          examples[i] = {"", scores[i], labels[i]};
        }
        return f1_at(examples, threshold).f1;
      },
      py::arg("scores"), py::arg("labels"), py::arg("threshold") = 0.5);

  m.def(
      "read_audio",
      [](const std::filesystem::path& path) {
        const AudioClip clip = read_audio(path);
        return py::make_tuple(samples_to_array(clip), clip.sample_rate);
      },
      py::arg("path"), "Returns (samples, sample_rate).");

  m.def(
      "write_audio",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& samples,
         int sample_rate, const std::filesystem::path& path) {
        write_audio(clip_from_array(samples, sample_rate), path,
                    WavEncoding::kFloat32);
      },
      py::arg("samples"), py::arg("sample_rate"), py::arg("path"));

  m.def("run_cli", &run_cli, py::arg("args"),
        "Runs the command-line interface; returns its exit code.");
}
