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

#ifndef PHONIA_EVALUATION_HPP_
#define PHONIA_EVALUATION_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "phonia/forest.hpp"
#include "phonia/matrix.hpp"
#include "phonia/selection.hpp"

namespace phonia {

// Raw labelled table for one binary comparison. Values may contain NaN
// (missing); imputation happens inside each training fold.
struct LabelledTable {
  std::vector<std::string> recording_ids;
  std::vector<std::string> subject_ids;
  std::vector<int> labels;  // 1 = positive class (first-listed group)
  std::vector<std::vector<double>> values;
  std::vector<std::string> feature_names;

  std::size_t n_rows() const { return values.size(); }
};

enum class Scheme { KFOLD_BALANCED, LOSO, RANDOM_BASELINE };
const char* scheme_name(Scheme s);

enum class SelectionMode { in_fold, global };
const char* selection_mode_name(SelectionMode m);

struct CvConfig {
  int k = 10;
  int repetitions = 100;
  int n_features = 10;
  SelectionMode selection_mode = SelectionMode::in_fold;
  // aggregate feature order used when selection_mode == global (and by the
  // sweep); indices into feature_names
  std::vector<int> global_ranking;
  ForestConfig forest;
  VoteConfig vote;
  std::uint64_t seed = 0;
};

struct CvReport {
  Scheme scheme = Scheme::KFOLD_BALANCED;
  int k = 0;
  int repetitions = 0;
  int n_features = 0;
  SelectionMode selection_mode = SelectionMode::in_fold;
  bool k_reduced = false;  // minority class was smaller than k
  std::vector<double> sensitivity;  // percent, one entry per repetition
  std::vector<double> specificity;
  double mean_sensitivity = 0.0, sd_sensitivity = 0.0;
  double mean_specificity = 0.0, sd_specificity = 0.0;
};

// Per-fold instrumentation for leakage checks: everything the fold derived
// from training data, plus exactly which rows went where.
struct FoldInfo {
  int repetition = 0;
  int fold = 0;
  std::vector<std::size_t> train_rows;  // indices into the LabelledTable
  std::vector<std::size_t> test_rows;
  std::vector<double> medians;          // imputation values, per feature
  std::vector<int> selected_features;
  std::vector<std::size_t> selection_rows;  // rows the selector saw
};
using CvHook = std::function<void(const FoldInfo&)>;

struct ConfusionCounts {
  long tp = 0, fn = 0, tn = 0, fp = 0;
};

// sensitivity = 100*TP/(TP+FN), specificity = 100*TN/(TN+FP)
std::pair<double, double> metrics(const ConfusionCounts& c);

// Balanced repeated k-fold CV at recording level: per repetition the
// majority class is undersampled (without replacement) to the minority
// size, the balanced set is partitioned into k folds, and each fold is
// predicted by a forest trained on the rest with fold-internal median
// imputation and (optionally) fold-internal feature selection.
CvReport balanced_kfold_cv(const LabelledTable& table, const CvConfig& cfg,
                           const CvHook& hook = nullptr);

// Leave-one-subject-out: per repetition subjects are balanced per class,
// then every retained subject is held out in turn with all of their
// recordings; the confusion is aggregated over subjects.
CvReport loso_cv(const LabelledTable& table, const CvConfig& cfg,
                 const CvHook& hook = nullptr);

// Same balanced k-fold structure, but predictions are fair coin flips.
CvReport random_baseline_cv(const LabelledTable& table, const CvConfig& cfg);

struct SweepPoint {
  int n_features = 0;
  CvReport report;
};

// Balanced k-fold CV at feature counts first..last step `step`, adding
// features in the given aggregate-rank order (prefix-monotone sets).
std::vector<SweepPoint> feature_sweep(const LabelledTable& table,
                                      const std::vector<int>& aggregate_order,
                                      const CvConfig& cfg, int first = 2,
                                      int last = 30, int step = 2);

struct ConfoundingReport {
  double avg_observations_per_leaf = 0.0;
  double avg_subjects_per_leaf = 0.0;
  double avg_training_subjects = 0.0;
  double subject_fraction = 0.0;  // subjects per leaf / training subjects
};

// Ratio assembly used by confounding_report; separated so reported
// averages can be fed through the same arithmetic.
ConfoundingReport make_confounding_report(double obs_per_leaf,
                                          double subjects_per_leaf,
                                          double training_subjects);

// Runs balanced k-fold CV with a per-fold leaf census and averages the
// census over trees, folds, and repetitions.
ConfoundingReport confounding_report(const LabelledTable& table,
                                     const CvConfig& cfg);

// Training-fold machinery shared by the schemes; exposed for reuse by the
// group-comparison command (median imputation over given rows).
std::vector<double> column_medians(const LabelledTable& table,
                                   const std::vector<std::size_t>& rows);

}  // namespace phonia

#endif  // PHONIA_EVALUATION_HPP_
