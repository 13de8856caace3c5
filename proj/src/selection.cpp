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

#include "phonia/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "phonia/error.hpp"

namespace phonia {

namespace {

void check_matrix(const FeatureMatrix& m) {
  if (m.n_rows() < 4) throw Error(Err::TooFewRows, "selection needs >= 4 rows");
  int pos = 0, neg = 0;
  for (int l : m.labels) (l ? pos : neg)++;
  if (pos < 2 || neg < 2) {
    throw Error(Err::TooFewRows, "selection needs >= 2 rows per class");
  }
  for (const auto& row : m.rows) {
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw Error(Err::FeatureMismatch, "matrix contains missing values");
      }
    }
  }
}

// order holds the ranked features; append the rest (degenerate or
// leftovers) in ascending index order
void append_missing(std::vector<int>& order, std::size_t d) {
  std::vector<bool> seen(d, false);
  for (int f : order) seen[static_cast<std::size_t>(f)] = true;
  for (std::size_t f = 0; f < d; ++f) {
    if (!seen[f]) order.push_back(static_cast<int>(f));
  }
}

}  // namespace

std::vector<std::vector<double>> standardized_columns(
    const FeatureMatrix& m, std::vector<int>* degenerate) {
  const std::size_t n = m.n_rows();
  const std::size_t d = m.n_features();
  std::vector<std::vector<double>> cols(d, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < d; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += m.rows[i][j];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dv = m.rows[i][j] - mean;
      var += dv * dv;
    }
    var /= static_cast<double>(n);
    if (var < 1e-24) {
      if (degenerate) degenerate->push_back(static_cast<int>(j));
      continue;  // column stays zero
    }
    const double inv_sd = 1.0 / std::sqrt(var);
    for (std::size_t i = 0; i < n; ++i) {
      cols[j][i] = (m.rows[i][j] - mean) * inv_sd;
    }
  }
  return cols;
}

// ---------------------------------------------------------------- mRMR --

namespace {

// equal-frequency discretization into `bins` levels via rank order; ties
// share a bin, so any strictly monotone transform yields identical codes
std::vector<int> equal_frequency_bins(const std::vector<double>& col,
                                      int bins) {
  const std::size_t n = col.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return col[a] < col[b]; });
  std::vector<int> code(n, 0);
  std::size_t r = 0;
  while (r < n) {
    std::size_t r2 = r;
    while (r2 + 1 < n && col[idx[r2 + 1]] == col[idx[r]]) ++r2;
    const int b = std::min<int>(bins - 1,
                                static_cast<int>(r * static_cast<std::size_t>(
                                                         bins) /
                                                 n));
    for (std::size_t k = r; k <= r2; ++k) code[idx[k]] = b;
    r = r2 + 1;
  }
  return code;
}

double mutual_information(const std::vector<int>& a, const std::vector<int>& b,
                          int ka, int kb) {
  const std::size_t n = a.size();
  std::vector<double> joint(static_cast<std::size_t>(ka * kb), 0.0);
  std::vector<double> pa(static_cast<std::size_t>(ka), 0.0);
  std::vector<double> pb(static_cast<std::size_t>(kb), 0.0);
  const double w = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    joint[static_cast<std::size_t>(a[i] * kb + b[i])] += w;
    pa[static_cast<std::size_t>(a[i])] += w;
    pb[static_cast<std::size_t>(b[i])] += w;
  }
  double mi = 0.0;
  for (int x = 0; x < ka; ++x) {
    for (int y = 0; y < kb; ++y) {
      const double p = joint[static_cast<std::size_t>(x * kb + y)];
      if (p > 0.0) {
        mi += p * std::log(p / (pa[static_cast<std::size_t>(x)] *
                                pb[static_cast<std::size_t>(y)]));
      }
    }
  }
  return std::max(mi, 0.0);
}

}  // namespace

SelectorResult rank_mrmr(const FeatureMatrix& m) {
  check_matrix(m);
  constexpr int kBins = 10;
  const std::size_t n = m.n_rows();
  const std::size_t d = m.n_features();

  SelectorResult res;
  std::vector<std::vector<int>> codes(d);
  std::vector<bool> usable(d, true);
  {
    std::vector<double> col(n);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = 0; i < n; ++i) col[i] = m.rows[i][j];
      const double lo = *std::min_element(col.begin(), col.end());
      const double hi = *std::max_element(col.begin(), col.end());
      if (hi - lo <= 0.0) {
        usable[j] = false;
        res.degenerate.push_back(static_cast<int>(j));
        continue;
      }
      codes[j] = equal_frequency_bins(col, kBins);
    }
  }

  std::vector<double> relevance(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    if (usable[j]) relevance[j] = mutual_information(codes[j], m.labels, kBins, 2);
  }

  std::vector<double> redundancy_sum(d, 0.0);
  std::vector<bool> picked(d, false);
  res.order.reserve(d);
  const std::size_t n_usable =
      static_cast<std::size_t>(std::count(usable.begin(), usable.end(), true));
  for (std::size_t step = 0; step < n_usable; ++step) {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d; ++j) {
      if (!usable[j] || picked[j]) continue;
      const double score =
          step == 0 ? relevance[j]
                    : relevance[j] - redundancy_sum[j] /
                                         static_cast<double>(step);
      if (score > best_score) {
        best_score = score;
        best = static_cast<int>(j);
      }
    }
    picked[static_cast<std::size_t>(best)] = true;
    res.order.push_back(best);
    for (std::size_t j = 0; j < d; ++j) {
      if (!usable[j] || picked[j]) continue;
      redundancy_sum[j] += mutual_information(
          codes[j], codes[static_cast<std::size_t>(best)], kBins, kBins);
    }
  }
  append_missing(res.order, d);
  return res;
}

// ----------------------------------------------------------------- GSO --

SelectorResult rank_gso(const FeatureMatrix& m) {
  check_matrix(m);
  const std::size_t n = m.n_rows();
  const std::size_t d = m.n_features();

  SelectorResult res;
  auto cols = standardized_columns(m, &res.degenerate);
  std::vector<bool> dead(d, false);
  for (int j : res.degenerate) dead[static_cast<std::size_t>(j)] = true;

  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = m.labels[i] ? 1.0 : -1.0;

  auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };

  // residual norm below this fraction of the original marks collinearity
  const double floor2 = 1e-12 * static_cast<double>(n);
  std::vector<bool> picked(d, false);
  while (true) {
    int best = -1;
    double best_score = -1.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (picked[j] || dead[j]) continue;
      const double xx = dot(cols[j], cols[j]);
      if (xx < floor2) {
        dead[j] = true;
        res.degenerate.push_back(static_cast<int>(j));
        continue;
      }
      const double xy = dot(cols[j], y);
      const double score = xy * xy / xx;
      if (score > best_score) {
        best_score = score;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) break;
    const auto bj = static_cast<std::size_t>(best);
    picked[bj] = true;
    res.order.push_back(best);

    const double xx = dot(cols[bj], cols[bj]);
    const double xy = dot(cols[bj], y);
    for (std::size_t i = 0; i < n; ++i) y[i] -= xy / xx * cols[bj][i];
    for (std::size_t j = 0; j < d; ++j) {
      if (picked[j] || dead[j]) continue;
      const double proj = dot(cols[j], cols[bj]) / xx;
      for (std::size_t i = 0; i < n; ++i) cols[j][i] -= proj * cols[bj][i];
    }
  }
  append_missing(res.order, d);
  return res;
}

// -------------------------------------------------------------- ReliefF --

SelectorResult rank_relief(const FeatureMatrix& m, const ReliefConfig& cfg) {
  check_matrix(m);
  const std::size_t n = m.n_rows();
  const std::size_t d = m.n_features();

  SelectorResult res;
  const auto cols = standardized_columns(m, &res.degenerate);

  std::vector<double> range(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    const auto [lo, hi] = std::minmax_element(cols[j].begin(), cols[j].end());
    range[j] = *hi - *lo;
  }

  auto diff = [&](std::size_t j, std::size_t a, std::size_t b) {
    return range[j] > 0.0 ? std::abs(cols[j][a] - cols[j][b]) / range[j] : 0.0;
  };
  auto distance = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += diff(j, a, b);
    return s;
  };

  const auto k = static_cast<std::size_t>(cfg.k_neighbors);
  std::vector<double> w(d, 0.0);
  std::vector<std::pair<double, std::size_t>> hits, misses;
  for (std::size_t i = 0; i < n; ++i) {
    hits.clear();
    misses.clear();
    for (std::size_t l = 0; l < n; ++l) {
      if (l == i) continue;
      (m.labels[l] == m.labels[i] ? hits : misses)
          .emplace_back(distance(i, l), l);
    }
    std::sort(hits.begin(), hits.end());
    std::sort(misses.begin(), misses.end());
    const std::size_t kh = std::min(k, hits.size());
    const std::size_t km = std::min(k, misses.size());
    if (kh == 0 || km == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      double hit_part = 0.0, miss_part = 0.0;
      for (std::size_t t = 0; t < kh; ++t) hit_part += diff(j, i, hits[t].second);
      for (std::size_t t = 0; t < km; ++t) miss_part += diff(j, i, misses[t].second);
      w[j] += miss_part / static_cast<double>(km) -
              hit_part / static_cast<double>(kh);
    }
  }
  for (auto& v : w) v /= static_cast<double>(n);

  res.order.resize(d);
  std::iota(res.order.begin(), res.order.end(), 0);
  std::stable_sort(res.order.begin(), res.order.end(), [&](int a, int b) {
    return w[static_cast<std::size_t>(a)] > w[static_cast<std::size_t>(b)];
  });
  return res;
}

// --------------------------------------------------------------- LLBFS --

SelectorResult rank_llbfs(const FeatureMatrix& m, const LlbfsConfig& cfg) {
  check_matrix(m);
  const std::size_t n = m.n_rows();
  const std::size_t d = m.n_features();

  SelectorResult res;
  const auto cols = standardized_columns(m, &res.degenerate);

  std::vector<double> w(d, 1.0 / static_cast<double>(d));
  std::vector<std::vector<double>> margin(n, std::vector<double>(d, 0.0));

  auto recompute_margins = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      double best_hit = std::numeric_limits<double>::infinity();
      double best_miss = std::numeric_limits<double>::infinity();
      std::size_t hit = i, miss = i;
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i) continue;
        double dist = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          dist += w[j] * std::abs(cols[j][i] - cols[j][l]);
        }
        if (m.labels[l] == m.labels[i]) {
          if (dist < best_hit) {
            best_hit = dist;
            hit = l;
          }
        } else if (dist < best_miss) {
          best_miss = dist;
          miss = l;
        }
      }
      for (std::size_t j = 0; j < d; ++j) {
        margin[i][j] = std::abs(cols[j][i] - cols[j][miss]) -
                       std::abs(cols[j][i] - cols[j][hit]);
      }
    }
  };

  res.converged = false;
  std::vector<double> grad(d);
  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    recompute_margins();
    // logistic margin loss gradient plus the l1 term
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double z = 0.0;
      for (std::size_t j = 0; j < d; ++j) z += w[j] * margin[i][j];
      const double s = 1.0 / (1.0 + std::exp(z));  // sigma(-z)
      for (std::size_t j = 0; j < d; ++j) grad[j] -= s * margin[i][j];
    }
    for (std::size_t j = 0; j < d; ++j) {
      grad[j] = grad[j] / static_cast<double>(n) + cfg.l1_penalty;
    }
    double gmax = 1e-12;
    for (double g : grad) gmax = std::max(gmax, std::abs(g));
    const double eta = 0.1 / gmax;

    double delta = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double next = std::max(0.0, w[j] - eta * grad[j]);
      delta = std::max(delta, std::abs(next - w[j]));
      w[j] = next;
    }
    if (delta < cfg.tol) {
      res.converged = true;
      break;
    }
  }

  res.order.resize(d);
  std::iota(res.order.begin(), res.order.end(), 0);
  std::stable_sort(res.order.begin(), res.order.end(), [&](int a, int b) {
    return w[static_cast<std::size_t>(a)] > w[static_cast<std::size_t>(b)];
  });
  return res;
}

// --------------------------------------------------------------- LASSO --

std::vector<double> lasso_solve(const std::vector<std::vector<double>>& cols,
                                const std::vector<double>& y, double lambda,
                                std::vector<double> warm_start) {
  const std::size_t d = cols.size();
  const std::size_t n = y.size();
  std::vector<double> beta = warm_start.empty()
                                 ? std::vector<double>(d, 0.0)
                                 : std::move(warm_start);
  std::vector<double> resid = y;
  std::vector<double> col_sq(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      resid[i] -= cols[j][i] * beta[j];
      col_sq[j] += cols[j][i] * cols[j][i];
    }
    col_sq[j] /= static_cast<double>(n);
  }

  auto soft = [](double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
  };
  auto update = [&](std::size_t j) {
    if (col_sq[j] < 1e-18) return 0.0;
    double rho = 0.0;
    for (std::size_t i = 0; i < n; ++i) rho += cols[j][i] * resid[i];
    rho = rho / static_cast<double>(n) + col_sq[j] * beta[j];
    const double next = soft(rho, lambda) / col_sq[j];
    const double change = next - beta[j];
    if (change != 0.0) {
      for (std::size_t i = 0; i < n; ++i) resid[i] -= cols[j][i] * change;
      beta[j] = next;
    }
    return std::abs(change);
  };

  // stop on the optimality conditions, not on coordinate movement: with
  // collinear columns the coefficients wander inside a degenerate optimum
  // long after the subgradient conditions are met
  auto kkt_violation = [&] {
    double worst = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (col_sq[j] < 1e-18) continue;
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) c += cols[j][i] * resid[i];
      c /= static_cast<double>(n);
      const double v = beta[j] == 0.0
                           ? std::abs(c) - lambda
                           : std::abs(c - lambda * (beta[j] > 0 ? 1.0 : -1.0));
      worst = std::max(worst, v);
    }
    return worst;
  };

  constexpr double kKktTol = 1e-7;
  constexpr double kStepTol = 1e-9;
  std::vector<std::size_t> active;
  for (int sweep = 0; sweep < 40; ++sweep) {
    for (std::size_t j = 0; j < d; ++j) update(j);
    active.clear();
    for (std::size_t j = 0; j < d; ++j) {
      if (beta[j] != 0.0) active.push_back(j);
    }
    // collinear actives ping-pong on a flat optimum; keep the cycle budget
    // small and let the optimality check decide when to stop
    for (int cycle = 0; cycle < 30; ++cycle) {
      double delta = 0.0;
      for (std::size_t j : active) delta = std::max(delta, update(j));
      if (delta < kStepTol) break;
    }
    // incremental residual updates drift; refresh before testing optimality
    resid = y;
    for (std::size_t j : active) {
      for (std::size_t i = 0; i < n; ++i) resid[i] -= cols[j][i] * beta[j];
    }
    if (kkt_violation() < kKktTol) break;
  }
  return beta;
}

SelectorResult rank_lasso(const FeatureMatrix& m, const LassoConfig& cfg) {
  check_matrix(m);
  const std::size_t n = m.n_rows();
  const std::size_t d = m.n_features();

  SelectorResult res;
  const auto cols = standardized_columns(m, &res.degenerate);

  std::vector<double> y(n);
  double ymean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = m.labels[i] ? 1.0 : -1.0;
    ymean += y[i];
  }
  ymean /= static_cast<double>(n);
  for (auto& v : y) v -= ymean;

  double lambda_max = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) c += cols[j][i] * y[i];
    lambda_max = std::max(lambda_max, std::abs(c) / static_cast<double>(n));
  }
  if (lambda_max <= 0.0) {
    res.order.resize(d);
    std::iota(res.order.begin(), res.order.end(), 0);
    return res;
  }

  std::vector<int> entry_rank(d, -1);
  std::vector<double> beta(d, 0.0);
  std::vector<double> final_beta(d, 0.0);
  int n_entered = 0;
  for (int p = 0; p < cfg.path_points; ++p) {
    const double frac = cfg.path_points == 1
                            ? 0.0
                            : static_cast<double>(p) /
                                  static_cast<double>(cfg.path_points - 1);
    const double lambda = lambda_max * std::pow(cfg.lambda_min_ratio, frac);
    beta = lasso_solve(cols, y, lambda, beta);

    // record first entries at this path point, largest magnitude first
    std::vector<int> fresh;
    for (std::size_t j = 0; j < d; ++j) {
      if (entry_rank[j] < 0 && std::abs(beta[j]) > 1e-12) {
        fresh.push_back(static_cast<int>(j));
      }
    }
    std::stable_sort(fresh.begin(), fresh.end(), [&](int a, int b) {
      return std::abs(beta[static_cast<std::size_t>(a)]) >
             std::abs(beta[static_cast<std::size_t>(b)]);
    });
    for (int j : fresh) entry_rank[static_cast<std::size_t>(j)] = n_entered++;
    final_beta = beta;
  }

  // never-active features trail, ordered by their correlation with the
  // final residual (their coefficients are all exactly zero)
  std::vector<double> resid = y;
  for (std::size_t j = 0; j < d; ++j) {
    if (final_beta[j] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) resid[i] -= cols[j][i] * final_beta[j];
  }
  std::vector<double> tail_score(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    if (entry_rank[j] >= 0) continue;
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) c += cols[j][i] * resid[i];
    tail_score[j] = std::abs(c);
  }

  res.order.resize(d);
  std::iota(res.order.begin(), res.order.end(), 0);
  std::stable_sort(res.order.begin(), res.order.end(), [&](int a, int b) {
    const auto ja = static_cast<std::size_t>(a);
    const auto jb = static_cast<std::size_t>(b);
    const bool ea = entry_rank[ja] >= 0, eb = entry_rank[jb] >= 0;
    if (ea != eb) return ea;
    if (ea) return entry_rank[ja] < entry_rank[jb];
    return tail_score[ja] > tail_score[jb];
  });
  return res;
}

// -------------------------------------------------------------- voting --

RankingTable majority_vote(const std::array<SelectorResult, 5>& selectors,
                           const std::vector<std::string>& feature_names,
                           const VoteConfig& cfg) {
  const std::size_t d = feature_names.size();
  for (const auto& sel : selectors) {
    if (sel.order.size() != d) {
      throw Error(Err::MismatchedFeatureSets,
                  "selector permutation size differs from feature set");
    }
    std::vector<bool> seen(d, false);
    for (int f : sel.order) {
      if (f < 0 || static_cast<std::size_t>(f) >= d ||
          seen[static_cast<std::size_t>(f)]) {
        throw Error(Err::MismatchedFeatureSets,
                    "selector output is not a permutation");
      }
      seen[static_cast<std::size_t>(f)] = true;
    }
  }

  RankingTable t;
  t.feature_names = feature_names;
  t.selector_rank.assign(d, {});
  t.vote_counts.assign(d, 0);
  for (std::size_t s = 0; s < 5; ++s) {
    for (std::size_t r = 0; r < d; ++r) {
      const auto f = static_cast<std::size_t>(selectors[s].order[r]);
      t.selector_rank[f][s] = static_cast<int>(r) + 1;
      if (static_cast<int>(r) < cfg.top_m) ++t.vote_counts[f];
    }
  }

  t.aggregate_order.resize(d);
  std::iota(t.aggregate_order.begin(), t.aggregate_order.end(), 0);
  std::sort(t.aggregate_order.begin(), t.aggregate_order.end(),
            [&](int a, int b) {
              const auto ja = static_cast<std::size_t>(a);
              const auto jb = static_cast<std::size_t>(b);
              if (t.vote_counts[ja] != t.vote_counts[jb]) {
                return t.vote_counts[ja] > t.vote_counts[jb];
              }
              int sum_a = 0, sum_b = 0;
              for (std::size_t s = 0; s < 5; ++s) {
                sum_a += t.selector_rank[ja][s];
                sum_b += t.selector_rank[jb][s];
              }
              if (sum_a != sum_b) return sum_a < sum_b;
              return feature_names[ja] < feature_names[jb];
            });
  return t;
}

RankingTable rank_ensemble(const FeatureMatrix& m, const VoteConfig& cfg) {
  const std::array<SelectorResult, 5> sel = {
      rank_mrmr(m), rank_gso(m), rank_relief(m), rank_llbfs(m), rank_lasso(m)};
  return majority_vote(sel, m.feature_names, cfg);
}

}  // namespace phonia
