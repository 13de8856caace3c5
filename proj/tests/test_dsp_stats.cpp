// Copyright 2026 The phonia authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "phonia/contour.hpp"
#include "phonia/dsp.hpp"
#include "phonia/error.hpp"
#include "phonia/stats.hpp"
#include "phonia/wavelet.hpp"

using namespace phonia;

TEST_CASE("fft roundtrip recovers the input") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<dsp::cplx> a(256);
  for (auto& z : a) z = dsp::cplx(g(rng), g(rng));
  auto b = a;
  dsp::fft(b, false);
  dsp::fft(b, true);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a[i] - b[i]) < 1e-12);
  }
}

TEST_CASE("fft locates a pure tone bin") {
  const int n = 1024;
  std::vector<dsp::cplx> a(n);
  for (int t = 0; t < n; ++t) {
    a[static_cast<std::size_t>(t)] =
        dsp::cplx(std::cos(2.0 * std::numbers::pi * 32.0 * t / n), 0.0);
  }
  dsp::fft(a, false);
  std::size_t best = 0;
  for (std::size_t k = 1; k < a.size() / 2; ++k) {
    if (std::abs(a[k]) > std::abs(a[best])) best = k;
  }
  CHECK(best == 32);
}

TEST_CASE("parabolic peak refines a sampled parabola exactly") {
  // y = 3 - (x - 0.3)^2 sampled at -1, 0, 1
  auto y = [](double x) { return 3.0 - (x - 0.3) * (x - 0.3); };
  double value = 0.0;
  const double d = dsp::parabolic_peak(y(-1), y(0), y(1), &value);
  CHECK(d == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("quantiles interpolate linearly") {
  const std::vector<double> x{1, 2, 3, 4};
  CHECK(stats::quantile(x, 0.25) == doctest::Approx(1.75));
  CHECK(stats::quantile(x, 0.75) == doctest::Approx(3.25));
  CHECK(stats::median(x) == doctest::Approx(2.5));
  CHECK(stats::mean(x) == doctest::Approx(2.5));
}

TEST_CASE("descriptive statistics on a constant series") {
  const std::vector<double> x(50, 3.25);
  const auto d = stats::describe(x);
  CHECK(d.mean == doctest::Approx(3.25));
  CHECK(d.median == doctest::Approx(3.25));
  CHECK(d.mode == doctest::Approx(3.25));
  CHECK(d.sd == 0.0);
  CHECK(d.iqr == 0.0);
  CHECK(d.skewness == 0.0);  // convention for flat input
}

TEST_CASE("skewness vanishes on symmetric series") {
  std::vector<double> x;
  for (int i = -50; i <= 50; ++i) x.push_back(i * 0.1);
  CHECK(std::abs(stats::skewness(x)) < 1e-12);
}

TEST_CASE("histogram mode finds the heavy bin") {
  std::vector<double> x;
  for (int i = 0; i < 100; ++i) x.push_back(i % 10);
  for (int i = 0; i < 50; ++i) x.push_back(7.001);
  const double mode = stats::histogram_mode(x);
  CHECK(mode > 6.5);
  CHECK(mode < 7.5);
}

TEST_CASE("tkeo matches its definition") {
  SUBCASE("three-point example") {
    const auto y = tkeo(std::vector<double>{0, 1, 0});
    REQUIRE(y.size() == 1);
    CHECK(y[0] == doctest::Approx(1.0));
  }
  SUBCASE("constant input gives zeros") {
    const auto y = tkeo(std::vector<double>(32, 2.5));
    for (double v : y) CHECK(v == doctest::Approx(0.0));
  }
  SUBCASE("too short input throws") {
    CHECK_THROWS_AS(tkeo(std::vector<double>{1, 2}), Error);
  }
  SUBCASE("slow sine follows the analytic identity") {
    // for x[n] = A sin(w n): tkeo ~ A^2 sin^2(w)
    const double A = 1.7, w = 0.01;
    std::vector<double> x(4096);
    for (std::size_t n = 0; n < x.size(); ++n) {
      x[n] = A * std::sin(w * static_cast<double>(n));
    }
    const auto y = tkeo(x);
    const double expected = A * A * std::sin(w) * std::sin(w);
    for (double v : y) {
      CHECK(std::abs(v - expected) / expected < 1e-6);
    }
  }
}

TEST_CASE("wavelet impulse response reproduces the analysis taps") {
  std::vector<double> x(8, 0.0);
  x[0] = 1.0;
  std::vector<double> a, d;
  wavelet::dwt_step(x, a, d);
  const auto h = wavelet::daubechies4_lowpass();
  REQUIRE(a.size() == 4);
  // impulse at zero: lowpass taps at even phases, highpass at the rest
  CHECK(a[0] == doctest::Approx(h[0]).epsilon(1e-15));
  CHECK(a[3] == doctest::Approx(h[2]).epsilon(1e-15));
  CHECK(a[1] == doctest::Approx(0.0));
  CHECK(a[2] == doctest::Approx(0.0));
  CHECK(d[0] == doctest::Approx(h[3]).epsilon(1e-15));
  CHECK(d[3] == doctest::Approx(h[1]).epsilon(1e-15));
  CHECK(d[1] == doctest::Approx(0.0));
  CHECK(d[2] == doctest::Approx(0.0));
  // frozen tap values
  CHECK(h[0] == doctest::Approx(0.4829629131445341).epsilon(1e-14));
  CHECK(h[1] == doctest::Approx(0.8365163037378079).epsilon(1e-14));
  CHECK(h[2] == doctest::Approx(0.2241438680420134).epsilon(1e-14));
  CHECK(h[3] == doctest::Approx(-0.1294095225512604).epsilon(1e-14));
}

TEST_CASE("multilevel wavelet transform conserves energy") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(1024);
    double in_energy = 0.0;
    for (auto& v : x) {
      v = g(rng);
      in_energy += v * v;
    }
    const auto dec = wavelet::dwt_multilevel(x, 10);
    double out_energy = 0.0;
    for (const auto& d : dec.details) {
      for (double v : d) out_energy += v * v;
    }
    for (double v : dec.approx.back()) out_energy += v * v;
    CHECK(std::abs(out_energy - in_energy) / in_energy < 1e-6);
  }
}

TEST_CASE("wavelet details of a constant vanish") {
  const std::vector<double> x(1024, 4.2);
  const auto dec = wavelet::dwt_multilevel(x, 10);
  for (const auto& d : dec.details) {
    for (double v : d) CHECK(std::abs(v) < 1e-10);
  }
}

TEST_CASE("resample_linear endpoints and interior") {
  const std::vector<double> x{0, 1, 2, 3};
  const auto y = dsp::resample_linear(x, 7);
  REQUIRE(y.size() == 7);
  CHECK(y.front() == doctest::Approx(0.0));
  CHECK(y.back() == doctest::Approx(3.0));
  CHECK(y[2] == doctest::Approx(1.0));
}
