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

#include "phonia/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <json.hpp>

#include "phonia/error.hpp"
#include "phonia/rng.hpp"

namespace phonia {

int Tree::leaf_for(std::span<const double> x) const {
  int node = 0;
  while (nodes[static_cast<std::size_t>(node)].feature >= 0) {
    const auto& nd = nodes[static_cast<std::size_t>(node)];
    node = x[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left
                                                                   : nd.right;
  }
  return node;
}

int Tree::vote(std::span<const double> x) const {
  const auto& leaf = nodes[static_cast<std::size_t>(leaf_for(x))];
  return leaf.class_counts[1] > leaf.class_counts[0] ? 1 : 0;
}

namespace {

struct TreeBuilder {
  const FeatureMatrix& m;
  const ForestConfig& cfg;
  Rng& rng;
  Tree tree;
  std::vector<int> feature_pool;

  TreeBuilder(const FeatureMatrix& mat, const ForestConfig& c, Rng& r)
      : m(mat), cfg(c), rng(r) {
    feature_pool.resize(m.n_features());
    std::iota(feature_pool.begin(), feature_pool.end(), 0);
  }

  int make_leaf(const std::vector<std::size_t>& rows) {
    TreeNode leaf;
    for (std::size_t r : rows) {
      ++leaf.class_counts[static_cast<std::size_t>(m.labels[r])];
    }
    tree.nodes.push_back(leaf);
    return static_cast<int>(tree.nodes.size()) - 1;
  }

  // best Gini split over `mtry` sampled candidate features; candidates are
  // scanned in ascending feature order so ties resolve deterministically
  bool best_split(const std::vector<std::size_t>& rows, int* feature,
                  double* threshold) {
    const int total1 =
        static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                       [&](std::size_t r) {
                                         return m.labels[r] == 1;
                                       }));
    const int total = static_cast<int>(rows.size());
    const int total0 = total - total1;
    const double parent =
        1.0 - (static_cast<double>(total0) * total0 +
               static_cast<double>(total1) * total1) /
                  (static_cast<double>(total) * total);

    const int d = static_cast<int>(m.n_features());
    int mtry = cfg.mtry > 0 ? std::min(cfg.mtry, d)
                            : std::max(1, static_cast<int>(std::floor(
                                              std::sqrt(static_cast<double>(d)))));
    // partial Fisher-Yates, then sort the chosen candidates
    for (int i = 0; i < mtry; ++i) {
      std::uniform_int_distribution<int> pick(i, d - 1);
      std::swap(feature_pool[static_cast<std::size_t>(i)],
                feature_pool[static_cast<std::size_t>(pick(rng))]);
    }
    std::vector<int> candidates(feature_pool.begin(),
                                feature_pool.begin() + mtry);
    std::sort(candidates.begin(), candidates.end());

    double best_gain = 1e-12;
    bool found = false;
    std::vector<std::pair<double, int>> vals(rows.size());
    for (int f : candidates) {
      for (std::size_t i = 0; i < rows.size(); ++i) {
        vals[i] = {m.rows[rows[i]][static_cast<std::size_t>(f)],
                   m.labels[rows[i]]};
      }
      std::sort(vals.begin(), vals.end());
      int left1 = 0;
      for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
        left1 += vals[i].second;
        if (vals[i].first == vals[i + 1].first) continue;
        const int nl = static_cast<int>(i) + 1;
        const int nr = total - nl;
        const int l1 = left1, l0 = nl - left1;
        const int r1 = total1 - left1, r0 = nr - r1;
        const double gl = 1.0 - (static_cast<double>(l0) * l0 +
                                 static_cast<double>(l1) * l1) /
                                    (static_cast<double>(nl) * nl);
        const double gr = 1.0 - (static_cast<double>(r0) * r0 +
                                 static_cast<double>(r1) * r1) /
                                    (static_cast<double>(nr) * nr);
        const double children =
            (nl * gl + nr * gr) / static_cast<double>(total);
        const double gain = parent - children;
        if (gain > best_gain) {
          best_gain = gain;
          *feature = f;
          *threshold = 0.5 * (vals[i].first + vals[i + 1].first);
          found = true;
        }
      }
    }
    return found;
  }

  int grow(const std::vector<std::size_t>& rows) {
    const bool pure =
        std::all_of(rows.begin(), rows.end(), [&](std::size_t r) {
          return m.labels[r] == m.labels[rows[0]];
        });
    if (pure || rows.size() < static_cast<std::size_t>(cfg.min_split)) {
      return make_leaf(rows);
    }
    int feature = -1;
    double threshold = 0.0;
    if (!best_split(rows, &feature, &threshold)) {
      return make_leaf(rows);
    }
    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : rows) {
      (m.rows[r][static_cast<std::size_t>(feature)] <= threshold ? left_rows
                                                                 : right_rows)
          .push_back(r);
    }
    const auto node_idx = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[static_cast<std::size_t>(node_idx)].feature = feature;
    tree.nodes[static_cast<std::size_t>(node_idx)].threshold = threshold;
    const int left = grow(left_rows);
    const int right = grow(right_rows);
    tree.nodes[static_cast<std::size_t>(node_idx)].left = left;
    tree.nodes[static_cast<std::size_t>(node_idx)].right = right;
    return node_idx;
  }
};

}  // namespace

Forest train_forest(const FeatureMatrix& m, const ForestConfig& cfg,
                    std::uint64_t seed) {
  if (m.n_rows() < 2) throw Error(Err::TooFewRows, "forest needs >= 2 rows");
  int pos = 0, neg = 0;
  for (int l : m.labels) (l ? pos : neg)++;
  if (pos == 0 || neg == 0) {
    throw Error(Err::SingleClassInput, "both classes must be present");
  }

  Forest f;
  f.n_features = m.n_features();
  f.seed = seed;
  f.trees.reserve(static_cast<std::size_t>(cfg.n_trees));
  const std::size_t n = m.n_rows();
  for (int t = 0; t < cfg.n_trees; ++t) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
    TreeBuilder builder(m, cfg, rng);
    if (cfg.bootstrap) {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      builder.tree.bootstrap_rows.resize(n);
      for (auto& r : builder.tree.bootstrap_rows) r = pick(rng);
    } else {
      builder.tree.bootstrap_rows.resize(n);
      std::iota(builder.tree.bootstrap_rows.begin(),
                builder.tree.bootstrap_rows.end(), 0);
    }
    builder.grow(builder.tree.bootstrap_rows);
    f.trees.push_back(std::move(builder.tree));
  }
  return f;
}

Prediction predict(const Forest& f, std::span<const double> x) {
  if (x.size() != f.n_features) {
    throw Error(Err::FeatureMismatch,
                "expected " + std::to_string(f.n_features) + " features, got " +
                    std::to_string(x.size()));
  }
  int votes1 = 0;
  for (const auto& t : f.trees) votes1 += t.vote(x);
  Prediction p;
  p.vote_fraction =
      static_cast<double>(votes1) / static_cast<double>(f.trees.size());
  p.label = 2 * votes1 > static_cast<int>(f.trees.size()) ? 1 : 0;
  return p;
}

std::vector<int> randomized_predictions(std::size_t n, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> out(n);
  for (auto& v : out) v = coin(rng);
  return out;
}

std::vector<TreeCensus> leaf_census(const Forest& f, const FeatureMatrix& m) {
  if (m.n_features() != f.n_features) {
    throw Error(Err::FeatureMismatch, "matrix does not match forest");
  }
  std::vector<TreeCensus> out;
  out.reserve(f.trees.size());
  for (const auto& tree : f.trees) {
    std::vector<int> leaf_obs(tree.nodes.size(), 0);
    std::vector<std::set<std::string>> leaf_subjects(tree.nodes.size());
    std::set<std::string> tree_subjects;
    for (std::size_t r : tree.bootstrap_rows) {
      const int leaf = tree.leaf_for(m.rows[r]);
      ++leaf_obs[static_cast<std::size_t>(leaf)];
      leaf_subjects[static_cast<std::size_t>(leaf)].insert(m.subject_ids[r]);
      tree_subjects.insert(m.subject_ids[r]);
    }
    TreeCensus c;
    c.distinct_subjects = tree_subjects.size();
    std::size_t leaves = 0;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      if (tree.nodes[i].feature >= 0 || leaf_obs[i] == 0) continue;
      ++leaves;
      c.mean_observations_per_leaf += leaf_obs[i];
      c.mean_subjects_per_leaf += static_cast<double>(leaf_subjects[i].size());
    }
    if (leaves > 0) {
      c.mean_observations_per_leaf /= static_cast<double>(leaves);
      c.mean_subjects_per_leaf /= static_cast<double>(leaves);
    }
    out.push_back(c);
  }
  return out;
}

std::string forest_to_json(const Forest& f) {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : f.trees) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& nd : t.nodes) {
      nodes.push_back({{"feature", nd.feature},
                       {"threshold", nd.threshold},
                       {"left", nd.left},
                       {"right", nd.right},
                       {"class_counts", nd.class_counts}});
    }
    trees.push_back({{"nodes", nodes},
                     {"bootstrap_rows", t.bootstrap_rows}});
  }
  nlohmann::json doc = {{"n_features", f.n_features},
                        {"seed", f.seed},
                        {"trees", trees}};
  return doc.dump();
}

}  // namespace phonia
