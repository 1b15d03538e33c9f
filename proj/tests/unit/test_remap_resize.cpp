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

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "synthscape/remap.hpp"
#include "synthscape/resize.hpp"

using namespace synthscape;
using namespace synthscape::testing;

TEST_SUITE("remap") {

TEST_CASE("log axis endpoints and monotonicity") {
  const LogFreqAxis axis{40.0, 24000.0, 256};
  CHECK(axis.center_hz(0) == doctest::Approx(40.0));
  CHECK(axis.center_hz(255) == doctest::Approx(24000.0));
  for (int j = 1; j < 256; ++j) {
    CHECK(axis.center_hz(j) > axis.center_hz(j - 1));
  }
  CHECK(axis.position(40.0) == doctest::Approx(0.0));
  CHECK(axis.position(24000.0) == doctest::Approx(255.0));
}

TEST_CASE("constant input stays constant") {
  const Grid<double> constant(10, 1025, 3.25);
  const Grid<double> out =
      log_freq_remap(constant, 48000.0 / 2048.0, 40.0, 24000.0, 256);
  REQUIRE(out.rows() == 10);
  REQUIRE(out.cols() == 256);
  for (size_t i = 0; i < out.size(); ++i) {
    CHECK(out.storage()[i] == doctest::Approx(3.25).epsilon(1e-12));
  }
}

TEST_CASE("a single hot source bin peaks at the nearest output center") {
  const double bin_hz = 48000.0 / 2048.0;
  const int hot = 300;
  Grid<double> spec(4, 1025, 0.0);
  for (size_t t = 0; t < 4; ++t) spec(t, hot) = 7.0;
  const Grid<double> out = log_freq_remap(spec, bin_hz, 40.0, 24000.0, 256);

  const LogFreqAxis axis{40.0, 24000.0, 256};
  int nearest = 0;
  double best = 1e18;
  for (int j = 0; j < 256; ++j) {
    const double d = std::abs(axis.center_hz(j) - hot * bin_hz);
    if (d < best) {
      best = d;
      nearest = j;
    }
  }
  size_t argmax = 0;
  for (size_t j = 0; j < out.cols(); ++j) {
    if (out(0, j) > out(0, argmax)) argmax = j;
  }
  CHECK(static_cast<int>(argmax) == nearest);
}

TEST_CASE("smooth spectrum energy is preserved under quadrature") {
  const double bin_hz = 48000.0 / 2048.0;
  const double f_min = 200.0;
  const double f_max = 23000.0;
  const size_t bins = 1025;
  Grid<double> spec(1, bins);
  auto smooth = [](double hz) {
    return 0.5 + std::exp(-std::pow((hz - 8000.0) / 4000.0, 2.0));
  };
  for (size_t f = 0; f < bins; ++f) {
    spec(0, f) = smooth(static_cast<double>(f) * bin_hz);
  }
  const Grid<double> out =
      log_freq_remap(spec, bin_hz, f_min, f_max, static_cast<int>(bins));

  // Trapezoid quadrature of the same integral over [f_min, f_max] on both
  // grids; the log grid is non-uniform.
  const LogFreqAxis axis{f_min, f_max, static_cast<int>(bins)};
  double energy_out = 0.0;
  for (size_t j = 0; j + 1 < bins; ++j) {
    const double df = axis.center_hz(static_cast<int>(j) + 1) -
                      axis.center_hz(static_cast<int>(j));
    energy_out += 0.5 * (out(0, j) + out(0, j + 1)) * df;
  }
  double energy_in = 0.0;
  for (double hz = f_min; hz + 1.0 <= f_max; hz += 1.0) {
    energy_in += 0.5 * (smooth(hz) + smooth(hz + 1.0));
  }
  CHECK(energy_out == doctest::Approx(energy_in).epsilon(0.05));
}

TEST_CASE("bounds are validated") {
  const Grid<double> spec(4, 1025, 1.0);
  const double bin_hz = 48000.0 / 2048.0;
  CHECK_THROWS_AS(log_freq_remap(spec, bin_hz, 0.0, 24000.0, 256),
                  std::invalid_argument);
  CHECK_THROWS_AS(log_freq_remap(spec, bin_hz, 100.0, 90.0, 256),
                  std::invalid_argument);
  CHECK_THROWS_AS(log_freq_remap(spec, bin_hz, 40.0, 25000.0, 256),
                  std::invalid_argument);
  CHECK_THROWS_AS(log_freq_remap(spec, bin_hz, 40.0, 24000.0, 1),
                  std::invalid_argument);
}

}  // TEST_SUITE

TEST_SUITE("resize") {

TEST_CASE("identity resize is exact to 1e-9") {
  Rng rng(55);
  Grid<double> in(37, 53);
  for (size_t i = 0; i < in.size(); ++i) {
    in.storage()[i] = rng.uniform(0.0, 100.0);
  }
  const Grid<double> out = lanczos_resize(in, 37, 53);
  for (size_t i = 0; i < in.size(); ++i) {
    CHECK(std::abs(out.storage()[i] - in.storage()[i]) <= 1e-9);
  }
}

TEST_CASE("constant matrix stays constant at any size") {
  const Grid<double> in(41, 29, 2.5);
  for (auto [r, c] : {std::pair<size_t, size_t>{256, 256},
                      {7, 11},
                      {100, 3}}) {
    const Grid<double> out = lanczos_resize(in, r, c);
    REQUIRE(out.rows() == r);
    REQUIRE(out.cols() == c);
    for (size_t i = 0; i < out.size(); ++i) {
      CHECK(out.storage()[i] == doctest::Approx(2.5).epsilon(1e-12));
    }
  }
}

TEST_CASE("large downscale preserves the mean within one percent") {
  Rng rng(66);
  Grid<double> in(1024, 934);
  double mean_in = 0.0;
  for (size_t i = 0; i < in.size(); ++i) {
    in.storage()[i] = rng.uniform(0.0, 1.0);
    mean_in += in.storage()[i];
  }
  mean_in /= static_cast<double>(in.size());
  const Grid<double> out = lanczos_resize(in, 256, 256);
  double mean_out = 0.0;
  for (size_t i = 0; i < out.size(); ++i) mean_out += out.storage()[i];
  mean_out /= static_cast<double>(out.size());
  CHECK(mean_out == doctest::Approx(mean_in).epsilon(0.01));
}

TEST_CASE("kernel matches the windowed sinc definition") {
  CHECK(lanczos(0.0, 3) == doctest::Approx(1.0));
  CHECK(lanczos(1.0, 3) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(lanczos(2.0, 3) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(lanczos(3.0, 3) == 0.0);
  CHECK(lanczos(3.5, 3) == 0.0);
  const double x = 1.4;
  const double expected = 3.0 * std::sin(M_PI * x) * std::sin(M_PI * x / 3.0) /
                          (M_PI * M_PI * x * x);
  CHECK(lanczos(x, 3) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("dimensions are validated") {
  const Grid<double> in(4, 4, 1.0);
  CHECK_THROWS_AS(lanczos_resize(in, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(lanczos_resize(Grid<double>(), 4, 4),
                  std::invalid_argument);
}

}  // TEST_SUITE
