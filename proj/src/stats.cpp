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

#include "phonia/stats.hpp"

#include <algorithm>
#include <cmath>

#include "phonia/error.hpp"

namespace phonia::stats {

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double sd(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

double quantile(std::span<const double> x, double p) {
  if (x.empty()) throw Error(Err::TooShort, "quantile of empty series");
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  p = std::clamp(p, 0.0, 1.0);
  const double h = static_cast<double>(s.size() - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, s.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return s[lo] + frac * (s[hi] - s[lo]);
}

double median(std::span<const double> x) { return quantile(x, 0.5); }

namespace {

struct Moments {
  double m, m2, m3, m4;  // mean and central moments (biased, /n)
};

Moments central_moments(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  const double m = mean(x);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - m;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  return {m, m2 / n, m3 / n, m4 / n};
}

}  // namespace

double skewness(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 3) return 0.0;
  const Moments mo = central_moments(x);
  if (mo.m2 < 1e-300) return 0.0;
  const double g1 = mo.m3 / std::pow(mo.m2, 1.5);
  const double nn = static_cast<double>(n);
  return g1 * std::sqrt(nn * (nn - 1.0)) / (nn - 2.0);
}

double kurtosis(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const Moments mo = central_moments(x);
  if (mo.m2 < 1e-300) return 0.0;
  return mo.m4 / (mo.m2 * mo.m2);
}

double histogram_mode(std::span<const double> x, int bins) {
  if (x.empty()) throw Error(Err::TooShort, "mode of empty series");
  const double lo = min_value(x);
  const double hi = max_value(x);
  if (hi - lo < 1e-300) return lo;
  std::vector<int> count(static_cast<std::size_t>(bins), 0);
  const double w = (hi - lo) / static_cast<double>(bins);
  for (double v : x) {
    int b = static_cast<int>((v - lo) / w);
    b = std::clamp(b, 0, bins - 1);
    ++count[static_cast<std::size_t>(b)];
  }
  const auto it = std::max_element(count.begin(), count.end());
  const double b = static_cast<double>(it - count.begin());
  return lo + (b + 0.5) * w;
}

double min_value(std::span<const double> x) {
  return *std::min_element(x.begin(), x.end());
}

double max_value(std::span<const double> x) {
  return *std::max_element(x.begin(), x.end());
}

Descriptive describe(std::span<const double> x) {
  if (x.size() < 2) throw Error(Err::TooShort, "describe needs >= 2 values");
  Descriptive d{};
  d.mean = mean(x);
  d.median = median(x);
  d.sd = sd(x);
  d.skewness = skewness(x);
  d.kurtosis = kurtosis(x);
  d.q1 = quantile(x, 0.25);
  d.q3 = quantile(x, 0.75);
  d.iqr = d.q3 - d.q1;
  d.p5 = quantile(x, 0.05);
  d.p95 = quantile(x, 0.95);
  d.mode = histogram_mode(x);
  d.min = min_value(x);
  d.max = max_value(x);
  return d;
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

}  // namespace phonia::stats
