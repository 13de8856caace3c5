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

#include "phonia/wavelet.hpp"

#include <cmath>

#include "phonia/dsp.hpp"
#include "phonia/error.hpp"
#include "phonia/features.hpp"

namespace phonia::wavelet {

std::array<double, 4> daubechies4_lowpass() {
  const double s3 = std::sqrt(3.0);
  const double norm = 4.0 * std::sqrt(2.0);
  return {(1.0 + s3) / norm, (3.0 + s3) / norm, (3.0 - s3) / norm,
          (1.0 - s3) / norm};
}

void dwt_step(std::span<const double> x, std::vector<double>& approx,
              std::vector<double>& detail) {
  const std::size_t n = x.size();
  if (n < 2 || n % 2 != 0) {
    throw Error(Err::TooShort, "dwt step needs even length >= 2");
  }
  const auto h = daubechies4_lowpass();
  const std::array<double, 4> g = {h[3], -h[2], h[1], -h[0]};
  const std::size_t half = n / 2;
  approx.assign(half, 0.0);
  detail.assign(half, 0.0);
  for (std::size_t i = 0; i < half; ++i) {
    double a = 0.0, d = 0.0;
    for (std::size_t m = 0; m < 4; ++m) {
      const double v = x[(2 * i + m) % n];
      a += h[m] * v;
      d += g[m] * v;
    }
    approx[i] = a;
    detail[i] = d;
  }
}

Decomposition dwt_multilevel(std::span<const double> x, int levels) {
  if (levels < 1) throw Error(Err::InvalidParams, "levels must be >= 1");
  const std::size_t div = std::size_t{1} << levels;
  if (x.size() < div || x.size() % div != 0) {
    throw Error(Err::TooShort,
                "input length must be a multiple of 2^levels");
  }
  Decomposition dec;
  std::vector<double> current(x.begin(), x.end());
  for (int k = 0; k < levels; ++k) {
    std::vector<double> a, d;
    dwt_step(current, a, d);
    dec.details.push_back(std::move(d));
    dec.approx.push_back(a);
    current = std::move(a);
  }
  return dec;
}

}  // namespace phonia::wavelet

namespace phonia {

namespace {

double log_energy_entropy(std::span<const double> s) {
  double e = 0.0;
  for (double v : s) {
    const double v2 = v * v;
    if (v2 > 0.0) e += std::log(v2);
  }
  return e;
}

double shannon_coeff_entropy(std::span<const double> s) {
  double e = 0.0;
  for (double v : s) {
    const double v2 = v * v;
    if (v2 > 0.0) e -= v2 * std::log(v2);
  }
  return e;
}

double energy(std::span<const double> s) {
  double e = 0.0;
  for (double v : s) e += v * v;
  return e;
}

double mean_tkeo(std::span<const double> s) {
  if (s.size() < 3) return 0.0;
  const auto t = tkeo(s);
  double m = 0.0;
  for (double v : t) m += v;
  return m / static_cast<double>(t.size());
}

double signed_log(double v) {
  return v >= 0.0 ? std::log1p(v) : -std::log1p(-v);
}

void emit_series(NamedValues& out, const std::string& prefix,
                 std::span<const double> series, const WaveletConfig& cfg) {
  const auto resampled = dsp::resample_linear(series, cfg.resample_length);
  const auto dec = wavelet::dwt_multilevel(resampled, cfg.levels);
  for (int k = 1; k <= cfg.levels; ++k) {
    const auto& d = dec.details[static_cast<std::size_t>(k - 1)];
    const auto& a = dec.approx[static_cast<std::size_t>(k - 1)];
    const std::string lvl = std::to_string(k);
    out.emplace_back(prefix + "det_entropy_log_" + lvl + "_coef",
                     log_energy_entropy(d));
    out.emplace_back(prefix + "det_entropy_shannon_" + lvl + "_coef",
                     shannon_coeff_entropy(d));
    out.emplace_back(prefix + "Ed2_" + lvl + "_coef", energy(d));
    out.emplace_back(prefix + "det_LT_TKEO_mean_" + lvl + "_coef",
                     signed_log(mean_tkeo(d)));
    out.emplace_back(prefix + "app_det_TKEO_mean_" + lvl + "_coef",
                     mean_tkeo(a));
    out.emplace_back(prefix + "app_entropy_log_" + lvl + "_coef",
                     log_energy_entropy(a));
  }
}

}  // namespace

NamedValues wavelet_features(const CycleContour& contour,
                             const WaveletConfig& cfg) {
  if (contour.num_cycles() < 16) {
    throw Error(Err::TooShort, "wavelet features need >= 16 cycles");
  }
  NamedValues out;
  emit_series(out, "", contour.f0_hz, cfg);
  emit_series(out, "tkeo_", tkeo(contour.f0_hz), cfg);
  return out;
}

}  // namespace phonia
