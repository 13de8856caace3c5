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

#include <algorithm>
#include <cmath>

#include "phonia/error.hpp"
#include "phonia/features.hpp"
#include "phonia/stats.hpp"

namespace phonia {

namespace {

constexpr std::size_t kMinCycles = 12;

double mean_abs_successive_diff(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    s += std::abs(x[i + 1] - x[i]);
  }
  return s / static_cast<double>(x.size() - 1);
}

double median_abs_successive_diff(std::span<const double> x) {
  std::vector<double> d(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    d[i] = std::abs(x[i + 1] - x[i]);
  }
  return stats::median(d);
}

// Mean absolute deviation from the centered w-point moving average,
// relative to the overall mean, percent. w odd.
double perturbation_quotient(std::span<const double> x, std::size_t w) {
  const std::size_t half = w / 2;
  if (x.size() < w) return 0.0;
  const double m = stats::mean(x);
  if (std::abs(m) < 1e-300) return 0.0;
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = half; i + half < x.size(); ++i) {
    double local = 0.0;
    for (std::size_t j = i - half; j <= i + half; ++j) local += x[j];
    local /= static_cast<double>(w);
    acc += std::abs(x[i] - local);
    ++count;
  }
  return acc / static_cast<double>(count) / m * 100.0;
}

// Variant normalizing by the local window average instead of the overall
// mean; keeps the windowed quotients distinct from the PPQ/APQ family.
double perturbation_quotient_local(std::span<const double> x, std::size_t w) {
  const std::size_t half = w / 2;
  if (x.size() < w) return 0.0;
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = half; i + half < x.size(); ++i) {
    double local = 0.0;
    for (std::size_t j = i - half; j <= i + half; ++j) local += x[j];
    local /= static_cast<double>(w);
    if (std::abs(local) < 1e-300) continue;
    acc += std::abs(x[i] - local) / local;
    ++count;
  }
  return count ? acc / static_cast<double>(count) * 100.0 : 0.0;
}

}  // namespace

NamedValues jitter_family(const CycleContour& contour) {
  if (contour.num_cycles() < kMinCycles) {
    throw Error(Err::TooFewCycles, "jitter needs >= 12 cycles");
  }
  const auto periods = contour.periods_seconds();
  const double mean_t = stats::mean(periods);
  const double abs_jitter = mean_abs_successive_diff(periods);

  NamedValues out;
  out.emplace_back("absJitter", abs_jitter);
  out.emplace_back("relJitter", abs_jitter / mean_t * 100.0);
  out.emplace_back("RAP", perturbation_quotient(periods, 3));
  out.emplace_back("PPQ5", perturbation_quotient(periods, 5));
  out.emplace_back("PPQ11", perturbation_quotient(periods, 11));
  out.emplace_back("medJitter",
                   median_abs_successive_diff(periods) / mean_t * 100.0);
  return out;
}

NamedValues shimmer_family(const CycleContour& contour) {
  if (contour.num_cycles() < kMinCycles) {
    throw Error(Err::TooFewCycles, "shimmer needs >= 12 cycles");
  }
  const auto& a = contour.a0;
  const double mean_a = stats::mean(a);
  if (mean_a < 1e-300) throw Error(Err::TooFewCycles, "silent contour");

  double db_acc = 0.0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    const double lo = std::max(a[i], 1e-12);
    const double hi = std::max(a[i + 1], 1e-12);
    db_acc += std::abs(20.0 * std::log10(hi / lo));
  }

  NamedValues out;
  out.emplace_back("localShimmer",
                   mean_abs_successive_diff(a) / mean_a * 100.0);
  out.emplace_back("dbShimmer", db_acc / static_cast<double>(a.size() - 1));
  out.emplace_back("APQ3", perturbation_quotient(a, 3));
  out.emplace_back("APQ5", perturbation_quotient(a, 5));
  out.emplace_back("PQ11.class_Schoentgen", perturbation_quotient(a, 11));
  out.emplace_back("medShimmer",
                   median_abs_successive_diff(a) / mean_a * 100.0);
  return out;
}

namespace {

// integral of x^2 over the fractional interval [a, b): edge samples are
// prorated, which keeps per-period energies shift-invariant instead of
// jumping when a cycle boundary drifts across a sample
double cycle_energy(std::span<const double> x, double a, double b) {
  a = std::max(a, 0.0);
  b = std::min(b, static_cast<double>(x.size()));
  if (b <= a) return 0.0;
  const auto lo = static_cast<std::size_t>(a);
  const auto hi = static_cast<std::size_t>(b);
  if (lo == hi) return (b - a) * x[lo] * x[lo];
  double e = (static_cast<double>(lo + 1) - a) * x[lo] * x[lo];
  for (std::size_t t = lo + 1; t < hi; ++t) e += x[t] * x[t];
  if (hi < x.size()) e += (b - static_cast<double>(hi)) * x[hi] * x[hi];
  return e;
}

}  // namespace

NamedValues pq_gq(const CycleContour& contour, const Segment& seg) {
  if (contour.num_cycles() < kMinCycles) {
    throw Error(Err::TooFewCycles, "perturbation quotients need >= 12 cycles");
  }
  const auto& x = seg.samples;
  const std::size_t n_cycles = contour.num_cycles();

  std::vector<double> energy(n_cycles, 0.0);
  std::vector<double> open_ratio(n_cycles, 0.0);
  for (std::size_t i = 0; i < n_cycles; ++i) {
    energy[i] =
        cycle_energy(x, contour.cycle_starts[i], contour.cycle_starts[i + 1]);
    const auto lo = static_cast<std::size_t>(
        std::ceil(std::max(contour.cycle_starts[i], 0.0)));
    const auto hi = std::min(
        x.size(),
        static_cast<std::size_t>(std::ceil(contour.cycle_starts[i + 1])));
    const std::size_t len = hi > lo ? hi - lo : 1;

    // smoothed squared-amplitude profile of the cycle
    std::vector<double> profile(len, 0.0);
    const std::size_t half = 2;  // 5-sample moving average
    for (std::size_t t = 0; t < len; ++t) {
      double s = 0.0;
      std::size_t cnt = 0;
      for (std::size_t j = t >= half ? t - half : 0;
           j <= std::min(t + half, len - 1); ++j) {
        const double v = x[lo + j];
        s += v * v;
        ++cnt;
      }
      profile[t] = s / static_cast<double>(cnt);
    }
    const double peak = *std::max_element(profile.begin(), profile.end());
    std::size_t open = 0;
    for (double v : profile) open += v >= 0.5 * peak ? 1 : 0;
    open_ratio[i] = static_cast<double>(open) / static_cast<double>(len);
  }

  // zeroth order: mean absolute successive relative change of cycle energy
  double p0 = 0.0;
  std::size_t p0_count = 0;
  for (std::size_t i = 0; i + 1 < n_cycles; ++i) {
    if (energy[i] < 1e-300) continue;
    p0 += std::abs(energy[i + 1] - energy[i]) / energy[i];
    ++p0_count;
  }
  p0 = p0_count ? p0 / static_cast<double>(p0_count) * 100.0 : 0.0;

  const auto periods = contour.periods_seconds();

  NamedValues out;
  out.emplace_back("P0", p0);
  out.emplace_back("PQ5_energy", perturbation_quotient_local(energy, 5));
  out.emplace_back("PQ11_energy", perturbation_quotient_local(energy, 11));
  out.emplace_back("PQ5_period", perturbation_quotient_local(periods, 5));
  out.emplace_back("PQ11_period", perturbation_quotient_local(periods, 11));
  out.emplace_back("GQ_mean", stats::mean(open_ratio));
  out.emplace_back("GQ_median", stats::median(open_ratio));
  out.emplace_back("GQ_std", stats::sd(open_ratio));
  out.emplace_back("GQ_prctile5", stats::quantile(open_ratio, 0.05));
  out.emplace_back("GQ_prctile95", stats::quantile(open_ratio, 0.95));
  return out;
}

}  // namespace phonia
