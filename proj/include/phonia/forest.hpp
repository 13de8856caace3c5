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

#ifndef PHONIA_FOREST_HPP_
#define PHONIA_FOREST_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "phonia/matrix.hpp"

namespace phonia {

struct ForestConfig {
  int n_trees = 500;
  int mtry = 0;       // candidate features per split; 0 = floor(sqrt(d))
  int min_split = 2;  // nodes with fewer rows become leaves
  bool bootstrap = true;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::array<int, 2> class_counts = {0, 0};  // training rows routed here
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  std::vector<std::size_t> bootstrap_rows;

  int leaf_for(std::span<const double> x) const;
  int vote(std::span<const double> x) const;  // leaf majority, tie -> 0
};

struct Forest {
  std::vector<Tree> trees;
  std::size_t n_features = 0;
  std::uint64_t seed = 0;
};

// CART with Gini impurity: bootstrap per tree (same size as the input,
// with replacement), floor(sqrt(d)) candidate features per split, grown
// until pure or below min_split. Deterministic given the seed.
Forest train_forest(const FeatureMatrix& m, const ForestConfig& cfg,
                    std::uint64_t seed);

struct Prediction {
  int label = 0;
  double vote_fraction = 0.0;  // fraction of trees voting class 1
};

// Majority vote over trees; an exact tie resolves to class 0.
Prediction predict(const Forest& f, std::span<const double> x);

// Fair-coin labels, independent of any features.
std::vector<int> randomized_predictions(std::size_t n, std::uint64_t seed);

struct TreeCensus {
  double mean_observations_per_leaf = 0.0;
  double mean_subjects_per_leaf = 0.0;
  std::size_t distinct_subjects = 0;  // in the tree's bootstrap sample
};

// Groups each tree's bootstrap rows by terminal leaf and counts
// observations and distinct subjects per leaf. m must be the forest's
// training matrix.
std::vector<TreeCensus> leaf_census(const Forest& f, const FeatureMatrix& m);

// Audit dump; not a stability-guaranteed format.
std::string forest_to_json(const Forest& f);

}  // namespace phonia

#endif  // PHONIA_FOREST_HPP_
