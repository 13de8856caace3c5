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

#include "phonia/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "phonia/error.hpp"

namespace phonia {

namespace {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 l^2)
double kolmogorov_q(double lambda) {
  if (lambda < 1e-3) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    if (term < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

// midranks over the pooled sample; returns rank sum of the first sample
// and the tie-correction term sum(t^3 - t)
struct RankInfo {
  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  bool has_ties = false;
};

RankInfo midranks(std::span<const double> a, std::span<const double> b) {
  struct Item {
    double v;
    int which;
  };
  std::vector<Item> pool;
  pool.reserve(a.size() + b.size());
  for (double v : a) pool.push_back({v, 0});
  for (double v : b) pool.push_back({v, 1});
  std::sort(pool.begin(), pool.end(),
            [](const Item& x, const Item& y) { return x.v < y.v; });
  RankInfo info;
  std::size_t i = 0;
  while (i < pool.size()) {
    std::size_t j = i;
    while (j + 1 < pool.size() && pool[j + 1].v == pool[i].v) ++j;
    const double t = static_cast<double>(j - i + 1);
    const double rank = (static_cast<double>(i + 1) +
                         static_cast<double>(j + 1)) /
                        2.0;
    if (t > 1.0) {
      info.has_ties = true;
      info.tie_term += t * t * t - t;
    }
    for (std::size_t k = i; k <= j; ++k) {
      if (pool[k].which == 0) info.rank_sum_a += rank;
    }
    i = j + 1;
  }
  return info;
}

// exact distribution of the rank sum of n1 items chosen from ranks 1..N:
// ways[s] = number of subsets of size n1 with rank sum s
std::vector<double> rank_sum_distribution(int n1, int N) {
  const int smax = 0 + N * n1;  // loose upper bound on the sum
  std::vector<std::vector<double>> ways(
      static_cast<std::size_t>(n1) + 1,
      std::vector<double>(static_cast<std::size_t>(smax) + 1, 0.0));
  ways[0][0] = 1.0;
  for (int v = 1; v <= N; ++v) {
    for (int k = std::min(n1, v); k >= 1; --k) {
      for (int s = smax; s >= v; --s) {
        ways[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] +=
            ways[static_cast<std::size_t>(k - 1)]
                [static_cast<std::size_t>(s - v)];
      }
    }
  }
  return ways[static_cast<std::size_t>(n1)];
}

double lgamma_safe(double x) { return std::lgamma(x); }

double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double bt = std::exp(lgamma_safe(a + b) - lgamma_safe(a) -
                             lgamma_safe(b) + a * std::log(x) +
                             b * std::log(1.0 - x));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return bt * betacf(a, b, x) / a;
  }
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

TestResult ks_test_2sample(std::span<const double> a,
                           std::span<const double> b) {
  if (a.size() < 5 || b.size() < 5) {
    throw Error(Err::TooFewSamples, "ks test needs >= 5 per sample");
  }
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= v) ++i;
    while (j < sb.size() && sb[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double sqrt_ne = std::sqrt(ne);
  const double lambda = (sqrt_ne + 0.12 + 0.11 / sqrt_ne) * d;
  return {d, kolmogorov_q(lambda), TestKind::KS2};
}

TestResult mann_whitney_u(std::span<const double> a,
                          std::span<const double> b) {
  if (a.size() < 3 || b.size() < 3) {
    throw Error(Err::TooFewSamples, "mwu needs >= 3 per sample");
  }
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  const double N = n1 + n2;
  const RankInfo info = midranks(a, b);
  const double u = info.rank_sum_a - n1 * (n1 + 1.0) / 2.0;
  const double mu = n1 * n2 / 2.0;

  double p;
  if (!info.has_ties && a.size() <= 12 && b.size() <= 12) {
    // exact two-sided tail from the rank-sum distribution
    const auto dist = rank_sum_distribution(static_cast<int>(a.size()),
                                            static_cast<int>(N));
    double total = 0.0, tail = 0.0;
    const double dev = std::abs(u - mu);
    const double smin = n1 * (n1 + 1.0) / 2.0;
    for (std::size_t s = 0; s < dist.size(); ++s) {
      if (dist[s] <= 0.0) continue;
      total += dist[s];
      const double us = static_cast<double>(s) - smin;
      if (std::abs(us - mu) >= dev - 1e-9) tail += dist[s];
    }
    p = tail / total;
  } else {
    const double tie_adj = info.tie_term / (N * (N - 1.0));
    const double var = n1 * n2 / 12.0 * ((N + 1.0) - tie_adj);
    if (var <= 0.0) {
      p = 1.0;
    } else {
      // continuity correction toward the mean
      const double z = (std::abs(u - mu) - 0.5) / std::sqrt(var);
      p = 2.0 * normal_sf(std::max(z, 0.0));
    }
  }
  return {u, std::clamp(p, 0.0, 1.0), TestKind::MWU};
}

TestResult t_test_unpaired(std::span<const double> a,
                           std::span<const double> b) {
  if (a.size() < 3 || b.size() < 3) {
    throw Error(Err::TooFewSamples, "t test needs >= 3 per sample");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double ma = 0.0, mb = 0.0;
  for (double v : a) ma += v;
  for (double v : b) mb += v;
  ma /= na;
  mb /= nb;
  double va = 0.0, vb = 0.0;
  for (double v : a) va += (v - ma) * (v - ma);
  for (double v : b) vb += (v - mb) * (v - mb);
  va /= (na - 1.0);
  vb /= (nb - 1.0);

  const double se2 = va / na + vb / nb;
  if (se2 <= 0.0) {
    if (ma == mb) {
      throw Error(Err::ZeroVariance, "both samples constant and equal");
    }
    return {std::numeric_limits<double>::infinity(), 0.0, TestKind::TTEST};
  }
  const double t = (ma - mb) / std::sqrt(se2);
  const double df = se2 * se2 / ((va / na) * (va / na) / (na - 1.0) +
                                 (vb / nb) * (vb / nb) / (nb - 1.0));
  const double p = incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
  return {t, std::clamp(p, 0.0, 1.0), TestKind::TTEST};
}

}  // namespace phonia
