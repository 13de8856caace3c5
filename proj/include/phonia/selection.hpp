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

#ifndef PHONIA_SELECTION_HPP_
#define PHONIA_SELECTION_HPP_

#include <array>
#include <string>
#include <vector>

#include "phonia/matrix.hpp"

namespace phonia {

// Full ordering of all features, best first. order is a permutation of
// feature indices; degenerate lists features that carried no usable signal
// (zero variance, or collinear with earlier picks) and were ranked last.
struct SelectorResult {
  std::vector<int> order;
  std::vector<int> degenerate;
  bool converged = true;  // only rank_llbfs can report false
};

// Greedy mutual-information ordering: maximize I(feature; class) minus the
// mean information shared with already-picked features. Features are
// discretized internally into 10 equal-frequency bins.
SelectorResult rank_mrmr(const FeatureMatrix& m);

// Greedy orthogonal least squares against the +/-1 coded label: pick the
// max squared correlation, project it out of the remaining features,
// repeat.
SelectorResult rank_gso(const FeatureMatrix& m);

struct ReliefConfig {
  int k_neighbors = 3;
};
// ReliefF weights with k nearest hits/misses on standardized features.
SelectorResult rank_relief(const FeatureMatrix& m, const ReliefConfig& cfg = {});

struct LlbfsConfig {
  double l1_penalty = 1e-3;
  int max_iters = 50;
  double tol = 1e-6;
};
// Margin-based local learning: nearest hit/miss recomputed under the
// current weights, logistic margin loss, l1-penalized projected-gradient
// update keeping weights non-negative.
SelectorResult rank_llbfs(const FeatureMatrix& m, const LlbfsConfig& cfg = {});

struct LassoConfig {
  int path_points = 100;
  double lambda_min_ratio = 1e-3;
};
// l1-penalized least squares over a log-spaced penalty path from the
// all-zero point downward; features are ranked by order of first entry
// into the active set.
SelectorResult rank_lasso(const FeatureMatrix& m, const LassoConfig& cfg = {});

// Coordinate-descent lasso solve at fixed lambda for standardized X and
// centered y, minimizing (1/2n)||y - Xb||^2 + lambda*||b||_1. Exposed so
// the optimality conditions can be checked independently.
std::vector<double> lasso_solve(const std::vector<std::vector<double>>& cols,
                                const std::vector<double>& y, double lambda,
                                std::vector<double> warm_start = {});

struct VoteConfig {
  int top_m = 30;
};

struct RankingTable {
  std::vector<std::string> feature_names;
  // per-feature 1-based rank under each selector, selector order:
  // mrmr, gso, relief, llbfs, lasso
  std::vector<std::array<int, 5>> selector_rank;
  std::vector<int> vote_counts;     // how many selectors put it in top_m
  std::vector<int> aggregate_order; // permutation, best first
};

// Top-m vote counting over the five orderings; aggregate order is by
// descending votes, then ascending mean rank, then feature name.
RankingTable majority_vote(const std::array<SelectorResult, 5>& selectors,
                           const std::vector<std::string>& feature_names,
                           const VoteConfig& cfg = {});

// Runs all five selectors and the vote.
RankingTable rank_ensemble(const FeatureMatrix& m, const VoteConfig& cfg = {});

}  // namespace phonia

#endif  // PHONIA_SELECTION_HPP_
