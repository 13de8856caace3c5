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

#include "phonia/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "phonia/error.hpp"
#include "phonia/rng.hpp"
#include "phonia/stats.hpp"

namespace phonia {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::KFOLD_BALANCED: return "KFOLD_BALANCED";
    case Scheme::LOSO: return "LOSO";
    case Scheme::RANDOM_BASELINE: return "RANDOM_BASELINE";
  }
  return "?";
}

const char* selection_mode_name(SelectionMode m) {
  return m == SelectionMode::in_fold ? "in_fold" : "global";
}

std::pair<double, double> metrics(const ConfusionCounts& c) {
  if (c.tp + c.fn < 1 || c.tn + c.fp < 1) {
    throw Error(Err::EmptyClass, "confusion matrix misses a class");
  }
  const double sens = 100.0 * static_cast<double>(c.tp) /
                      static_cast<double>(c.tp + c.fn);
  const double spec = 100.0 * static_cast<double>(c.tn) /
                      static_cast<double>(c.tn + c.fp);
  return {sens, spec};
}

std::vector<double> column_medians(const LabelledTable& table,
                                   const std::vector<std::size_t>& rows) {
  const std::size_t d = table.feature_names.size();
  std::vector<double> medians(d, 0.0);
  std::vector<double> buf;
  for (std::size_t j = 0; j < d; ++j) {
    buf.clear();
    for (std::size_t r : rows) {
      const double v = table.values[r][j];
      if (std::isfinite(v)) buf.push_back(v);
    }
    medians[j] = buf.empty() ? 0.0 : stats::median(buf);
  }
  return medians;
}

namespace {

void summarize(CvReport& rep) {
  rep.mean_sensitivity = stats::mean(rep.sensitivity);
  rep.mean_specificity = stats::mean(rep.specificity);
  rep.sd_sensitivity =
      rep.sensitivity.size() > 1 ? stats::sd(rep.sensitivity) : 0.0;
  rep.sd_specificity =
      rep.specificity.size() > 1 ? stats::sd(rep.specificity) : 0.0;
}

// imputed sub-matrix over `rows` restricted to `features` (all features
// when empty), using the provided per-feature medians
FeatureMatrix build_matrix(const LabelledTable& table,
                           const std::vector<std::size_t>& rows,
                           const std::vector<double>& medians,
                           const std::vector<int>& features) {
  FeatureMatrix m;
  if (features.empty()) {
    m.feature_names = table.feature_names;
  } else {
    for (int f : features) {
      m.feature_names.push_back(
          table.feature_names[static_cast<std::size_t>(f)]);
    }
  }
  m.rows.reserve(rows.size());
  for (std::size_t r : rows) {
    std::vector<double> row;
    row.reserve(m.feature_names.size());
    if (features.empty()) {
      for (std::size_t j = 0; j < table.feature_names.size(); ++j) {
        const double v = table.values[r][j];
        row.push_back(std::isfinite(v) ? v : medians[j]);
      }
    } else {
      for (int f : features) {
        const auto j = static_cast<std::size_t>(f);
        const double v = table.values[r][j];
        row.push_back(std::isfinite(v) ? v : medians[j]);
      }
    }
    m.rows.push_back(std::move(row));
    m.labels.push_back(table.labels[r]);
    m.subject_ids.push_back(table.subject_ids[r]);
  }
  return m;
}

std::vector<int> pick_features(const LabelledTable& table,
                               const std::vector<std::size_t>& train_rows,
                               const std::vector<double>& medians,
                               const CvConfig& cfg) {
  const int want = std::min<int>(cfg.n_features,
                                 static_cast<int>(table.feature_names.size()));
  std::vector<int> selected;
  if (cfg.selection_mode == SelectionMode::global) {
    const auto& ranking = cfg.global_ranking;
    if (static_cast<int>(ranking.size()) < want) {
      throw Error(Err::InvalidParams, "global ranking shorter than n_features");
    }
    selected.assign(ranking.begin(), ranking.begin() + want);
  } else {
    const FeatureMatrix train =
        build_matrix(table, train_rows, medians, {});
    const RankingTable rt = rank_ensemble(train, cfg.vote);
    selected.assign(rt.aggregate_order.begin(),
                    rt.aggregate_order.begin() + want);
  }
  return selected;
}

struct FoldOutcome {
  ConfusionCounts confusion;
  Forest forest;                      // kept only when census is requested
  std::vector<std::size_t> train_rows;
  std::vector<int> selected;
};

FoldOutcome run_fold(const LabelledTable& table,
                     const std::vector<std::size_t>& train_rows,
                     const std::vector<std::size_t>& test_rows,
                     const CvConfig& cfg, std::uint64_t fold_seed,
                     const CvHook& hook, int repetition, int fold,
                     bool keep_forest) {
  const auto medians = column_medians(table, train_rows);
  const auto selected = pick_features(table, train_rows, medians, cfg);

  const FeatureMatrix train = build_matrix(table, train_rows, medians, selected);
  const FeatureMatrix test = build_matrix(table, test_rows, medians, selected);

  FoldOutcome out;
  out.forest = train_forest(train, cfg.forest, fold_seed);
  for (std::size_t i = 0; i < test.n_rows(); ++i) {
    const Prediction p = predict(out.forest, test.rows[i]);
    if (test.labels[i] == 1) {
      (p.label == 1 ? out.confusion.tp : out.confusion.fn)++;
    } else {
      (p.label == 0 ? out.confusion.tn : out.confusion.fp)++;
    }
  }
  if (hook) {
    FoldInfo info;
    info.repetition = repetition;
    info.fold = fold;
    info.train_rows = train_rows;
    info.test_rows = test_rows;
    info.medians = medians;
    info.selected_features = selected;
    info.selection_rows = train_rows;
    hook(info);
  }
  if (!keep_forest) out.forest = Forest{};
  out.train_rows = train_rows;
  out.selected = selected;
  return out;
}

// per-repetition balanced undersampling at recording level; returns the
// balanced row ids, shuffled
std::vector<std::size_t> balance_rows(const LabelledTable& table, Rng& rng) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    (table.labels[r] == 1 ? pos : neg).push_back(r);
  }
  if (pos.size() < 2 || neg.size() < 2) {
    throw Error(Err::TooFewRows, "need >= 2 recordings per class");
  }
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);
  const std::size_t s = std::min(pos.size(), neg.size());
  std::vector<std::size_t> rows(pos.begin(),
                                pos.begin() + static_cast<std::ptrdiff_t>(s));
  rows.insert(rows.end(), neg.begin(),
              neg.begin() + static_cast<std::ptrdiff_t>(s));
  std::shuffle(rows.begin(), rows.end(), rng);
  return rows;
}

using FoldCallback =
    std::function<void(int rep, int fold, const std::vector<std::size_t>&,
                       const std::vector<std::size_t>&, std::uint64_t)>;

// common repetition loop: balance, partition into k folds, hand each
// train/test split to the callback
void kfold_repetitions(const LabelledTable& table, const CvConfig& cfg,
                       bool* k_reduced, const FoldCallback& run) {
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(rep));
    const auto rows = balance_rows(table, rng);
    const int k = std::min<int>(cfg.k, static_cast<int>(rows.size() / 2));
    if (k < cfg.k && k_reduced) *k_reduced = true;
    if (k < 2) throw Error(Err::TooFewRows, "not enough rows to fold");

    for (int fold = 0; fold < k; ++fold) {
      std::vector<std::size_t> train, test;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        (static_cast<int>(i % static_cast<std::size_t>(k)) == fold ? test
                                                                   : train)
            .push_back(rows[i]);
      }
      const std::uint64_t fold_seed =
          mix_seed(cfg.seed, 0x10000 + static_cast<std::uint64_t>(rep) * 64 +
                                 static_cast<std::uint64_t>(fold));
      run(rep, fold, train, test, fold_seed);
    }
  }
}

}  // namespace

CvReport balanced_kfold_cv(const LabelledTable& table, const CvConfig& cfg,
                           const CvHook& hook) {
  CvReport rep;
  rep.scheme = Scheme::KFOLD_BALANCED;
  rep.k = cfg.k;
  rep.repetitions = cfg.repetitions;
  rep.n_features = cfg.n_features;
  rep.selection_mode = cfg.selection_mode;

  ConfusionCounts current;
  int current_rep = -1;
  auto flush = [&] {
    if (current_rep >= 0) {
      const auto [sens, spec] = metrics(current);
      rep.sensitivity.push_back(sens);
      rep.specificity.push_back(spec);
    }
    current = ConfusionCounts{};
  };
  kfold_repetitions(
      table, cfg, &rep.k_reduced,
      [&](int r, int fold, const std::vector<std::size_t>& train,
          const std::vector<std::size_t>& test, std::uint64_t fold_seed) {
        if (r != current_rep) {
          flush();
          current_rep = r;
        }
        const FoldOutcome out =
            run_fold(table, train, test, cfg, fold_seed, hook, r, fold, false);
        current.tp += out.confusion.tp;
        current.fn += out.confusion.fn;
        current.tn += out.confusion.tn;
        current.fp += out.confusion.fp;
      });
  flush();
  summarize(rep);
  return rep;
}

CvReport loso_cv(const LabelledTable& table, const CvConfig& cfg,
                 const CvHook& hook) {
  CvReport rep;
  rep.scheme = Scheme::LOSO;
  rep.k = 0;
  rep.repetitions = cfg.repetitions;
  rep.n_features = cfg.n_features;
  rep.selection_mode = cfg.selection_mode;

  // subject -> rows, split by class (a subject carries one label)
  std::map<std::string, std::vector<std::size_t>> by_subject;
  for (std::size_t r = 0; r < table.n_rows(); ++r) {
    by_subject[table.subject_ids[r]].push_back(r);
  }
  std::vector<std::string> pos_subjects, neg_subjects;
  for (const auto& [subject, rows] : by_subject) {
    (table.labels[rows[0]] == 1 ? pos_subjects : neg_subjects)
        .push_back(subject);
  }
  if (pos_subjects.size() < 2 || neg_subjects.size() < 2) {
    throw Error(Err::TooFewSubjects, "need >= 2 subjects per class");
  }

  for (int r = 0; r < cfg.repetitions; ++r) {
    Rng rng = make_rng(cfg.seed, 0x20000 + static_cast<std::uint64_t>(r));
    auto pos = pos_subjects;
    auto neg = neg_subjects;
    std::shuffle(pos.begin(), pos.end(), rng);
    std::shuffle(neg.begin(), neg.end(), rng);
    const std::size_t s = std::min(pos.size(), neg.size());
    std::vector<std::string> retained(pos.begin(),
                                      pos.begin() +
                                          static_cast<std::ptrdiff_t>(s));
    retained.insert(retained.end(), neg.begin(),
                    neg.begin() + static_cast<std::ptrdiff_t>(s));
    std::sort(retained.begin(), retained.end());

    ConfusionCounts confusion;
    for (std::size_t held = 0; held < retained.size(); ++held) {
      std::vector<std::size_t> train, test;
      for (const auto& subject : retained) {
        const auto& rows = by_subject[subject];
        auto& dst = subject == retained[held] ? test : train;
        dst.insert(dst.end(), rows.begin(), rows.end());
      }
      const std::uint64_t fold_seed =
          mix_seed(cfg.seed, 0x30000 + static_cast<std::uint64_t>(r) * 256 +
                                 held);
      const FoldOutcome out =
          run_fold(table, train, test, cfg, fold_seed, hook, r,
                   static_cast<int>(held), false);
      confusion.tp += out.confusion.tp;
      confusion.fn += out.confusion.fn;
      confusion.tn += out.confusion.tn;
      confusion.fp += out.confusion.fp;
    }
    const auto [sens, spec] = metrics(confusion);
    rep.sensitivity.push_back(sens);
    rep.specificity.push_back(spec);
  }
  summarize(rep);
  return rep;
}

CvReport random_baseline_cv(const LabelledTable& table, const CvConfig& cfg) {
  CvReport rep;
  rep.scheme = Scheme::RANDOM_BASELINE;
  rep.k = cfg.k;
  rep.repetitions = cfg.repetitions;
  rep.n_features = 0;
  rep.selection_mode = cfg.selection_mode;

  for (int r = 0; r < cfg.repetitions; ++r) {
    Rng rng = make_rng(cfg.seed, 0x40000 + static_cast<std::uint64_t>(r));
    const auto rows = balance_rows(table, rng);
    const auto preds = randomized_predictions(
        rows.size(), mix_seed(cfg.seed, 0x50000 + static_cast<std::uint64_t>(r)));
    ConfusionCounts confusion;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (table.labels[rows[i]] == 1) {
        (preds[i] == 1 ? confusion.tp : confusion.fn)++;
      } else {
        (preds[i] == 0 ? confusion.tn : confusion.fp)++;
      }
    }
    const auto [sens, spec] = metrics(confusion);
    rep.sensitivity.push_back(sens);
    rep.specificity.push_back(spec);
  }
  summarize(rep);
  return rep;
}

std::vector<SweepPoint> feature_sweep(const LabelledTable& table,
                                      const std::vector<int>& aggregate_order,
                                      const CvConfig& cfg, int first, int last,
                                      int step) {
  if (aggregate_order.size() < static_cast<std::size_t>(last)) {
    throw Error(Err::InvalidParams, "aggregate ranking shorter than sweep top");
  }
  std::vector<SweepPoint> points;
  for (int n = first; n <= last; n += step) {
    CvConfig c = cfg;
    c.selection_mode = SelectionMode::global;
    c.global_ranking = aggregate_order;
    c.n_features = n;
    points.push_back({n, balanced_kfold_cv(table, c)});
  }
  return points;
}

ConfoundingReport make_confounding_report(double obs_per_leaf,
                                          double subjects_per_leaf,
                                          double training_subjects) {
  ConfoundingReport rep;
  rep.avg_observations_per_leaf = obs_per_leaf;
  rep.avg_subjects_per_leaf = subjects_per_leaf;
  rep.avg_training_subjects = training_subjects;
  rep.subject_fraction =
      training_subjects > 0.0 ? subjects_per_leaf / training_subjects : 0.0;
  return rep;
}

ConfoundingReport confounding_report(const LabelledTable& table,
                                     const CvConfig& cfg) {
  double sum_obs = 0.0, sum_subj = 0.0, sum_train_subj = 0.0;
  std::size_t n_trees = 0;

  bool k_reduced = false;
  kfold_repetitions(
      table, cfg, &k_reduced,
      [&](int r, int fold, const std::vector<std::size_t>& train,
          const std::vector<std::size_t>& test, std::uint64_t fold_seed) {
        (void)test;
        const auto medians = column_medians(table, train);
        const auto selected = pick_features(table, train, medians, cfg);
        const FeatureMatrix train_m =
            build_matrix(table, train, medians, selected);
        const Forest forest =
            train_forest(train_m, cfg.forest,
                         mix_seed(fold_seed, static_cast<std::uint64_t>(
                                                 r * 1000 + fold)));
        for (const TreeCensus& c : leaf_census(forest, train_m)) {
          sum_obs += c.mean_observations_per_leaf;
          sum_subj += c.mean_subjects_per_leaf;
          sum_train_subj += static_cast<double>(c.distinct_subjects);
          ++n_trees;
        }
      });
  if (n_trees == 0) throw Error(Err::TooFewRows, "census saw no trees");
  const double inv = 1.0 / static_cast<double>(n_trees);
  return make_confounding_report(sum_obs * inv, sum_subj * inv,
                                 sum_train_subj * inv);
}

}  // namespace phonia
