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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "phonia/error.hpp"
#include "phonia/selection.hpp"

using namespace phonia;

namespace {

// n rows, d noise features, with feature `informative` shifted by the label
FeatureMatrix informative_dataset(std::size_t n, std::size_t d,
                                  std::size_t informative, double shift,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  FeatureMatrix m;
  for (std::size_t j = 0; j < d; ++j) {
    m.feature_names.push_back("f" + std::to_string(j));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(d);
    for (auto& v : row) v = g(rng);
    const int label = i < n / 2 ? 1 : 0;
    row[informative] += label ? shift : -shift;
    m.rows.push_back(std::move(row));
    m.labels.push_back(label);
    m.subject_ids.push_back("s" + std::to_string(i));
  }
  return m;
}

bool is_permutation_over(const std::vector<int>& order, std::size_t d) {
  if (order.size() != d) return false;
  std::set<int> seen(order.begin(), order.end());
  return seen.size() == d && *seen.begin() == 0 &&
         *seen.rbegin() == static_cast<int>(d) - 1;
}

}  // namespace

TEST_CASE("every selector finds the single informative feature") {
  const auto m = informative_dataset(60, 40, 17, 2.5, 1);
  const auto results = {rank_mrmr(m), rank_gso(m), rank_relief(m),
                        rank_llbfs(m), rank_lasso(m)};
  for (const auto& r : results) {
    CHECK(r.order[0] == 17);
    CHECK(is_permutation_over(r.order, 40));
  }
}

TEST_CASE("mrmr penalizes an exact duplicate of the top feature") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  FeatureMatrix m;
  m.feature_names = {"dup_a", "dup_b", "partner", "noise1", "noise2"};
  // two complementary half-signals: class = (u > 0) xor (w > 0) style
  for (int i = 0; i < 120; ++i) {
    const int label = i % 2;
    const double u = g(rng) + (label ? 1.2 : -1.2);
    const double w = g(rng) + (label ? 1.2 : -1.2);
    // dup_a and dup_b are the same signal; partner carries fresh evidence
    m.rows.push_back({u, u, w, g(rng), g(rng)});
    m.labels.push_back(label);
    m.subject_ids.push_back("s" + std::to_string(i));
  }
  const auto r = rank_mrmr(m);
  CHECK((r.order[0] == 0 || r.order[0] == 1));
  // the duplicate of the winner must not be picked second
  const int winner = r.order[0];
  const int duplicate = winner == 0 ? 1 : 0;
  CHECK(r.order[1] != duplicate);
  CHECK(r.order[1] == 2);
}

TEST_CASE("mrmr ordering survives strictly monotone transforms") {
  const auto m = informative_dataset(50, 12, 3, 2.0, 5);
  auto warped = m;
  for (auto& row : warped.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      row[j] = std::exp(row[j] * 0.5);  // strictly increasing
    }
  }
  CHECK(rank_mrmr(m).order == rank_mrmr(warped).order);
}

TEST_CASE("gso picks by squared correlation and flags collinear leftovers") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  FeatureMatrix m;
  m.feature_names = {"strong", "weak", "copy_of_strong"};
  for (int i = 0; i < 200; ++i) {
    const int label = i % 2;
    const double y = label ? 1.0 : -1.0;
    const double strong = 0.9 * y + std::sqrt(1 - 0.81) * g(rng);
    const double weak = 0.1 * y + std::sqrt(1 - 0.01) * g(rng);
    // exact duplicate: scores tie bit-for-bit, the lower index wins
    m.rows.push_back({strong, weak, strong});
    m.labels.push_back(label);
    m.subject_ids.push_back("s" + std::to_string(i));
  }
  const auto r = rank_gso(m);
  CHECK(r.order[0] == 0);
  // the duplicate is orthogonalized to nothing and lands last, flagged
  CHECK(r.order.back() == 2);
  CHECK(std::find(r.degenerate.begin(), r.degenerate.end(), 2) !=
        r.degenerate.end());
}

TEST_CASE("standardizing selectors ignore affine rescaling of a column") {
  const auto m = informative_dataset(60, 10, 4, 2.0, 7);
  auto scaled = m;
  for (auto& row : scaled.rows) row[8] = row[8] * 250.0 - 13.0;
  CHECK(rank_gso(m).order == rank_gso(scaled).order);
  CHECK(rank_relief(m).order == rank_relief(scaled).order);
  CHECK(rank_llbfs(m).order == rank_llbfs(scaled).order);
  CHECK(rank_lasso(m).order == rank_lasso(scaled).order);
}

TEST_CASE("relief weights noise near zero and survives row duplication") {
  const auto m = informative_dataset(200, 6, 2, 2.0, 11);
  const auto r = rank_relief(m);
  CHECK(r.order[0] == 2);

  auto doubled = m;
  for (std::size_t i = 0; i < m.n_rows(); ++i) {
    doubled.rows.push_back(m.rows[i]);
    doubled.labels.push_back(m.labels[i]);
    doubled.subject_ids.push_back(m.subject_ids[i] + "_copy");
  }
  // exact weight equality would need k = 1; with k = 3 the duplicated
  // neighbourhoods shuffle noise-feature weights near zero, so check the
  // stable part of the ordering: the informative feature stays on top
  CHECK(rank_relief(doubled).order[0] == r.order[0]);
}

TEST_CASE("llbfs weights are non-negative and deterministic") {
  const auto m = informative_dataset(60, 20, 9, 2.5, 13);
  const auto r1 = rank_llbfs(m);
  const auto r2 = rank_llbfs(m);
  CHECK(r1.order == r2.order);
  CHECK(r1.order[0] == 9);
}

TEST_CASE("lasso path properties") {
  const auto m = informative_dataset(60, 15, 6, 2.5, 17);

  SUBCASE("all coefficients vanish at lambda_max") {
    std::vector<int> degenerate;
    const auto cols = standardized_columns(m, &degenerate);
    std::vector<double> y(m.n_rows());
    double ym = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = m.labels[i] ? 1.0 : -1.0;
      ym += y[i];
    }
    ym /= static_cast<double>(y.size());
    for (auto& v : y) v -= ym;
    double lambda_max = 0.0;
    for (const auto& col : cols) {
      double c = 0.0;
      for (std::size_t i = 0; i < y.size(); ++i) c += col[i] * y[i];
      lambda_max = std::max(lambda_max,
                            std::abs(c) / static_cast<double>(y.size()));
    }
    const auto beta = lasso_solve(cols, y, lambda_max);
    for (double b : beta) CHECK(b == 0.0);
  }

  SUBCASE("the informative feature enters the path first") {
    const auto r = rank_lasso(m);
    CHECK(r.order[0] == 6);
  }

  SUBCASE("subgradient conditions hold along the path") {
    std::vector<int> degenerate;
    const auto cols = standardized_columns(m, &degenerate);
    const std::size_t n = m.n_rows();
    std::vector<double> y(n);
    double ym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = m.labels[i] ? 1.0 : -1.0;
      ym += y[i];
    }
    ym /= static_cast<double>(n);
    for (auto& v : y) v -= ym;
    double lambda_max = 0.0;
    for (const auto& col : cols) {
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) c += col[i] * y[i];
      lambda_max = std::max(lambda_max, std::abs(c) / static_cast<double>(n));
    }
    std::vector<double> beta;
    for (int p = 0; p < 100; ++p) {
      const double lambda =
          lambda_max * std::pow(1e-3, static_cast<double>(p) / 99.0);
      beta = lasso_solve(cols, y, lambda, beta);
      std::vector<double> resid = y;
      for (std::size_t j = 0; j < cols.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) resid[i] -= cols[j][i] * beta[j];
      }
      for (std::size_t j = 0; j < cols.size(); ++j) {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) c += cols[j][i] * resid[i];
        c /= static_cast<double>(n);
        if (beta[j] == 0.0) {
          CHECK(std::abs(c) <= lambda + 1e-6);
        } else {
          CHECK(std::abs(c - lambda * (beta[j] > 0 ? 1.0 : -1.0)) <= 1e-6);
        }
      }
    }
  }
}

TEST_CASE("majority vote aggregation") {
  SUBCASE("unanimous selectors reproduce their shared order") {
    const std::size_t d = 8;
    SelectorResult sel;
    sel.order = {3, 1, 4, 0, 5, 2, 7, 6};
    std::array<SelectorResult, 5> all{sel, sel, sel, sel, sel};
    std::vector<std::string> names;
    for (std::size_t j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
    const RankingTable t = majority_vote(all, names, {.top_m = 3});
    CHECK(t.aggregate_order == sel.order);
    CHECK(t.vote_counts[3] == 5);
    CHECK(t.vote_counts[6] == 0);
  }

  SUBCASE("three top-m appearances beat two") {
    // feature 0 in top-2 of three selectors; feature 1 in top-2 of two
    std::array<SelectorResult, 5> all;
    all[0].order = {0, 2, 1, 3};
    all[1].order = {2, 0, 1, 3};
    all[2].order = {0, 2, 1, 3};
    all[3].order = {1, 2, 0, 3};
    all[4].order = {2, 1, 0, 3};
    const std::vector<std::string> names{"a", "b", "c", "d"};
    const RankingTable t = majority_vote(all, names, {.top_m = 2});
    CHECK(t.vote_counts[0] == 3);
    CHECK(t.vote_counts[1] == 2);
    const auto pos_of = [&](int f) {
      return std::find(t.aggregate_order.begin(), t.aggregate_order.end(), f) -
             t.aggregate_order.begin();
    };
    CHECK(pos_of(0) < pos_of(1));
  }

  SUBCASE("equal votes and equal mean rank fall back to the name") {
    // f0 ranks (1,1,1,3,4) and f1 ranks (2,2,2,2,2) both sum to 10; with
    // top_m covering every position the votes tie at 5 as well
    std::array<SelectorResult, 5> all;
    all[0].order = {0, 1, 2, 3};
    all[1].order = {0, 1, 3, 2};
    all[2].order = {0, 1, 2, 3};
    all[3].order = {2, 1, 0, 3};
    all[4].order = {3, 1, 2, 0};
    const std::vector<std::string> names{"zeta", "alpha", "mid1", "mid2"};
    const RankingTable t = majority_vote(all, names, {.top_m = 4});
    CHECK(t.vote_counts[0] == 5);
    CHECK(t.vote_counts[1] == 5);
    int sum0 = 0, sum1 = 0;
    for (std::size_t s = 0; s < 5; ++s) {
      sum0 += t.selector_rank[0][s];
      sum1 += t.selector_rank[1][s];
    }
    REQUIRE(sum0 == sum1);
    // "alpha" (f1) precedes "zeta" (f0) alphabetically
    CHECK(t.aggregate_order[0] == 1);
    CHECK(t.aggregate_order[1] == 0);
  }

  SUBCASE("vote is symmetric in its selector inputs") {
    const auto m = informative_dataset(40, 8, 5, 2.0, 23);
    std::array<SelectorResult, 5> sel = {rank_mrmr(m), rank_gso(m),
                                         rank_relief(m), rank_llbfs(m),
                                         rank_lasso(m)};
    const RankingTable a = majority_vote(sel, m.feature_names);
    std::rotate(sel.begin(), sel.begin() + 2, sel.end());
    const RankingTable b = majority_vote(sel, m.feature_names);
    CHECK(a.vote_counts == b.vote_counts);
    CHECK(a.aggregate_order == b.aggregate_order);
  }

  SUBCASE("mismatched permutations are rejected") {
    SelectorResult good;
    good.order = {0, 1, 2};
    SelectorResult bad;
    bad.order = {0, 1, 1};
    std::array<SelectorResult, 5> all{good, good, bad, good, good};
    const std::vector<std::string> names{"a", "b", "c"};
    try {
      majority_vote(all, names, {});
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(e.code() == Err::MismatchedFeatureSets);
    }
  }
}

TEST_CASE("ensemble puts the lone informative feature first") {
  const auto m = informative_dataset(60, 30, 12, 2.5, 29);
  const RankingTable t = rank_ensemble(m);
  CHECK(t.aggregate_order[0] == 12);
  CHECK(t.vote_counts[12] == 5);
}

TEST_CASE("mean rank decides between equal vote counts") {
  std::array<SelectorResult, 5> sel;
  sel[0].order = {0, 1};
  sel[1].order = {1, 0};
  sel[2].order = {0, 1};
  sel[3].order = {1, 0};
  sel[4].order = {0, 1};
  const std::vector<std::string> names{"zeta", "alpha"};
  const RankingTable t = majority_vote(sel, names, {.top_m = 2});
  CHECK(t.vote_counts[0] == 5);
  CHECK(t.vote_counts[1] == 5);
  // f0 rank sum 7 beats f1 rank sum 8
  CHECK(t.aggregate_order[0] == 0);
}
