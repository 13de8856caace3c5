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

#include "phonia/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "phonia/audio.hpp"
#include "phonia/csv.hpp"
#include "phonia/error.hpp"
#include "phonia/evaluation.hpp"
#include "phonia/features.hpp"
#include "phonia/hypothesis.hpp"
#include "phonia/manifest.hpp"
#include "phonia/selection.hpp"
#include "phonia/synth.hpp"

namespace phonia {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// ----------------------------------------------------------- comparison --

struct Comparison {
  std::vector<Group> side_a, side_b;
  std::string label;
};

std::vector<Group> parse_side(const std::string& side) {
  std::vector<Group> groups;
  std::size_t pos = 0;
  while (pos <= side.size()) {
    const std::size_t plus = side.find('+', pos);
    const std::string token =
        side.substr(pos, plus == std::string::npos ? std::string::npos
                                                   : plus - pos);
    if (token.empty()) throw Error(Err::UnknownGroup, "empty group token");
    groups.push_back(parse_group(token));
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return groups;
}

Comparison parse_comparison(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) {
    throw Error(Err::UnknownGroup,
                "comparison must look like GROUP[+GROUP]:GROUP[+GROUP]");
  }
  Comparison c;
  c.side_a = parse_side(spec.substr(0, colon));
  c.side_b = parse_side(spec.substr(colon + 1));
  c.label = spec;
  for (Group a : c.side_a) {
    for (Group b : c.side_b) {
      if (a == b) {
        throw Error(Err::UnknownGroup,
                    "group " + std::string(group_name(a)) + " on both sides");
      }
    }
  }
  return c;
}

// ------------------------------------------------------------- file I/O --

struct FeatureCsv {
  std::vector<std::string> recording_ids;
  std::vector<std::vector<double>> values;  // NaN where empty
  std::vector<std::string> feature_names;
};

FeatureCsv read_feature_csv(const std::string& path) {
  const auto rows = csv::read_file(path);
  if (rows.empty() || rows[0].empty() || rows[0][0] != "recording_id") {
    throw Error(Err::MissingColumn,
                path + " must start with a recording_id column");
  }
  FeatureCsv out;
  out.feature_names.assign(rows[0].begin() + 1, rows[0].end());
  const auto& schema = FeatureSchema::instance();
  for (const auto& name : out.feature_names) {
    if (schema.index_of(name) < 0) {
      throw Error(Err::FeatureMismatch,
                  path + " has a column not in the schema: " + name);
    }
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size()) {
      throw Error(Err::MissingColumn,
                  path + " row " + std::to_string(r + 1) + " is ragged");
    }
    out.recording_ids.push_back(rows[r][0]);
    std::vector<double> vals;
    vals.reserve(out.feature_names.size());
    for (std::size_t c = 1; c < rows[r].size(); ++c) {
      if (rows[r][c].empty()) {
        vals.push_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        vals.push_back(std::stod(rows[r][c]));
      }
    }
    out.values.push_back(std::move(vals));
  }
  return out;
}

bool in_side(Group g, const std::vector<Group>& side) {
  return std::find(side.begin(), side.end(), g) != side.end();
}

LabelledTable build_table(const FeatureCsv& features, const Manifest& manifest,
                          const Comparison& cmp,
                          std::optional<Sex> sex_filter) {
  std::map<std::string, const ManifestRow*> by_path;
  for (const auto& row : manifest.rows) by_path[row.recording_path] = &row;

  LabelledTable t;
  t.feature_names = features.feature_names;
  for (std::size_t i = 0; i < features.recording_ids.size(); ++i) {
    const auto it = by_path.find(features.recording_ids[i]);
    if (it == by_path.end()) {
      throw Error(Err::UnknownGroup, "recording " + features.recording_ids[i] +
                                         " not present in manifest");
    }
    const ManifestRow& mr = *it->second;
    if (sex_filter && mr.sex != *sex_filter) continue;
    int label;
    if (in_side(mr.group, cmp.side_a)) {
      label = 1;
    } else if (in_side(mr.group, cmp.side_b)) {
      label = 0;
    } else {
      continue;
    }
    t.recording_ids.push_back(features.recording_ids[i]);
    t.subject_ids.push_back(mr.subject_id);
    t.labels.push_back(label);
    t.values.push_back(features.values[i]);
  }
  if (t.n_rows() == 0) throw Error(Err::TooFewRows, "comparison is empty");
  return t;
}

// globally imputed matrix of the whole table (plot data, global rankings)
FeatureMatrix global_matrix(const LabelledTable& t) {
  std::vector<std::size_t> all(t.n_rows());
  std::iota(all.begin(), all.end(), 0);
  const auto medians = column_medians(t, all);
  FeatureMatrix m;
  m.feature_names = t.feature_names;
  for (std::size_t r = 0; r < t.n_rows(); ++r) {
    std::vector<double> row = t.values[r];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!std::isfinite(row[j])) row[j] = medians[j];
    }
    m.rows.push_back(std::move(row));
    m.labels.push_back(t.labels[r]);
    m.subject_ids.push_back(t.subject_ids[r]);
  }
  return m;
}

void write_ranking_csv(const std::string& path, const RankingTable& rt) {
  std::vector<csv::Row> rows;
  rows.push_back({"feature_name", "rank_mrmr", "rank_gso", "rank_relief",
                  "rank_llbfs", "rank_lasso", "vote_count", "aggregate_rank"});
  std::vector<int> aggregate_rank(rt.feature_names.size(), 0);
  for (std::size_t r = 0; r < rt.aggregate_order.size(); ++r) {
    aggregate_rank[static_cast<std::size_t>(rt.aggregate_order[r])] =
        static_cast<int>(r) + 1;
  }
  for (std::size_t f = 0; f < rt.feature_names.size(); ++f) {
    csv::Row row{rt.feature_names[f]};
    for (int s = 0; s < 5; ++s) {
      row.push_back(std::to_string(rt.selector_rank[f][static_cast<std::size_t>(s)]));
    }
    row.push_back(std::to_string(rt.vote_counts[f]));
    row.push_back(std::to_string(aggregate_rank[f]));
    rows.push_back(std::move(row));
  }
  csv::write_file(path, rows);
}

std::vector<int> read_ranking_order(const std::string& path,
                                    const std::vector<std::string>& names) {
  const auto rows = csv::read_file(path);
  if (rows.empty()) throw Error(Err::MissingColumn, path + " is empty");
  int name_col = -1, rank_col = -1;
  for (std::size_t c = 0; c < rows[0].size(); ++c) {
    if (rows[0][c] == "feature_name") name_col = static_cast<int>(c);
    if (rows[0][c] == "aggregate_rank") rank_col = static_cast<int>(c);
  }
  if (name_col < 0 || rank_col < 0) {
    throw Error(Err::MissingColumn,
                path + " needs feature_name and aggregate_rank columns");
  }
  std::map<std::string, int> index_of;
  for (std::size_t j = 0; j < names.size(); ++j) {
    index_of[names[j]] = static_cast<int>(j);
  }
  std::vector<std::pair<int, int>> ranked;  // (aggregate_rank, feature idx)
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto it = index_of.find(rows[r][static_cast<std::size_t>(name_col)]);
    if (it == index_of.end()) continue;
    ranked.emplace_back(std::stoi(rows[r][static_cast<std::size_t>(rank_col)]),
                        it->second);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<int> order;
  order.reserve(ranked.size());
  for (const auto& [rank, f] : ranked) order.push_back(f);
  return order;
}

json report_to_json(const CvReport& rep) {
  return json{{"scheme", scheme_name(rep.scheme)},
              {"k", rep.k},
              {"repetitions", rep.repetitions},
              {"n_features", rep.n_features},
              {"selection_mode", selection_mode_name(rep.selection_mode)},
              {"k_reduced", rep.k_reduced},
              {"sensitivity_per_repetition", rep.sensitivity},
              {"specificity_per_repetition", rep.specificity},
              {"mean_sensitivity", rep.mean_sensitivity},
              {"sd_sensitivity", rep.sd_sensitivity},
              {"mean_specificity", rep.mean_specificity},
              {"sd_specificity", rep.sd_specificity}};
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Err::InvalidParams:
    case Err::UnknownGroup:
    case Err::UnknownGroupLabel:
    case Err::MismatchedFeatureSets:
      return kExitValidation;
    default:
      return kExitData;
  }
}

// ---------------------------------------------------------- subcommands --

struct SynthArgs {
  std::string out_dir;
  std::uint64_t seed = 1;
  double duration_s = 3.0;
  int rate = 44100;
  int subjects = 10;
  int recs = 2;
  std::string group_a = "LRRK2_PD", group_b = "IPD";
  double f0_lo_a = 100, f0_hi_a = 180, f0_lo_b = 100, f0_hi_b = 180;
  double jitter_a = 2.0, jitter_b = 0.5;
  double shimmer_a = 5.0, shimmer_b = 3.0;
  double hnr_a = 15.0, hnr_b = 20.0;
};

int cmd_synth(const SynthArgs& a) {
  CohortSpec spec;
  spec.seed = a.seed;
  spec.duration_s = a.duration_s;
  spec.sample_rate_hz = a.rate;
  auto fill = [&](CohortGroupParams& g, const std::string& label, double f0_lo,
                  double f0_hi, double jit, double shim, double hnr) {
    g.group = parse_group(label);
    g.n_subjects = a.subjects;
    g.recordings_per_subject = a.recs;
    g.f0_lo_hz = f0_lo;
    g.f0_hi_hz = f0_hi;
    g.jitter_pct = jit;
    g.shimmer_pct = shim;
    g.hnr_db = hnr;
  };
  fill(spec.group_a, a.group_a, a.f0_lo_a, a.f0_hi_a, a.jitter_a, a.shimmer_a,
       a.hnr_a);
  fill(spec.group_b, a.group_b, a.f0_lo_b, a.f0_hi_b, a.jitter_b, a.shimmer_b,
       a.hnr_b);
  const std::string manifest = generate_cohort(spec, a.out_dir);
  std::cout << "wrote cohort manifest " << manifest << "\n";
  return kExitOk;
}

struct ExtractArgs {
  std::string manifest;
  std::string audio_root;
  std::string out = "features.csv";
  std::string discard_log;
  std::string schema_json;
};

int cmd_extract(const ExtractArgs& a) {
  const std::string root =
      a.audio_root.empty() ? fs::path(a.manifest).parent_path().string()
                           : a.audio_root;
  const CorpusLoad corpus = load_corpus(a.manifest, root);

  const auto& schema = FeatureSchema::instance();
  std::vector<csv::Row> out_rows;
  {
    csv::Row header{"recording_id"};
    for (const auto& def : schema.defs()) header.push_back(def.name);
    out_rows.push_back(std::move(header));
  }
  std::vector<std::string> discards;
  for (const auto& failure : corpus.failures) {
    discards.push_back(failure.recording_path + "\t" + failure.error);
  }

  const FeatureConfig cfg;
  for (const auto& rec : corpus.recordings) {
    try {
      const Segment seg = select_segment(rec);
      const GateResult gate = quality_gate(seg);
      if (!gate.accepted()) {
        discards.push_back(rec.id + "\t" +
                           std::string(gate_reason_name(gate.reason)) +
                           (gate.reason == GateReason::TooNoisy
                                ? " (hnr_db=" + csv::format_double(gate.hnr_db) +
                                      ")"
                                : ""));
        continue;
      }
      const FeatureVector fv = extract_all(seg, cfg);
      csv::Row row{rec.id};
      for (std::size_t j = 0; j < fv.values.size(); ++j) {
        row.push_back(fv.missing[j] ? "" : csv::format_double(fv.values[j]));
      }
      out_rows.push_back(std::move(row));
    } catch (const Error& e) {
      discards.push_back(rec.id + "\t" + e.what());
    }
  }

  const std::string discard_path =
      a.discard_log.empty() ? a.out + ".discards.txt" : a.discard_log;
  {
    std::ofstream log(discard_path);
    for (const auto& line : discards) log << line << "\n";
  }
  if (!a.schema_json.empty()) {
    std::ofstream sj(a.schema_json);
    sj << schema.to_json() << "\n";
  }
  if (out_rows.size() <= 1) {
    std::cerr << "no recordings passed extraction; see " << discard_path
              << "\n";
    return kExitData;
  }
  csv::write_file(a.out, out_rows);
  std::cout << "extracted " << out_rows.size() - 1 << " recordings ("
            << discards.size() << " discarded, log: " << discard_path << ")\n";
  return kExitOk;
}

struct SelectArgs {
  std::string features, manifest, comparison;
  std::string out = "ranking.csv";
  int top_m = 30;
};

int cmd_select(const SelectArgs& a) {
  const Comparison cmp = parse_comparison(a.comparison);
  const FeatureCsv fc = read_feature_csv(a.features);
  const Manifest manifest = load_manifest(a.manifest);
  const LabelledTable table = build_table(fc, manifest, cmp, std::nullopt);

  int pos = 0, neg = 0;
  for (int l : table.labels) (l ? pos : neg)++;
  if (pos < 2 || neg < 2) {
    throw Error(Err::TooFewRows, "need >= 2 recordings per group");
  }

  VoteConfig vote;
  vote.top_m = a.top_m;
  const RankingTable rt = rank_ensemble(global_matrix(table), vote);
  write_ranking_csv(a.out, rt);

  // near-uniform votes mean the groups carry no separating signal
  const auto& schema = FeatureSchema::instance();
  std::cout << "top 10 by majority vote (" << cmp.label << "):\n";
  for (int r = 0; r < 10 && r < static_cast<int>(rt.aggregate_order.size());
       ++r) {
    const auto f = static_cast<std::size_t>(rt.aggregate_order[
        static_cast<std::size_t>(r)]);
    const int idx = schema.index_of(rt.feature_names[f]);
    std::cout << "  " << r + 1 << ". " << rt.feature_names[f] << " ["
              << (idx >= 0 ? category_name(schema.at(
                                 static_cast<std::size_t>(idx)).category)
                           : "?")
              << "] votes=" << rt.vote_counts[f] << "\n";
  }
  const int top_votes =
      rt.vote_counts[static_cast<std::size_t>(rt.aggregate_order[0])];
  if (top_votes <= 1) {
    std::cout << "warning: vote counts are near-uniform; the groups may be "
                 "indistinguishable\n";
  }
  return kExitOk;
}

struct EvaluateArgs {
  std::string features, manifest, comparison;
  std::string scheme = "kfold";
  int k = 10;
  int reps = 100;
  int n_features = 10;
  std::string selection_mode = "in_fold";
  std::string ranking;  // for global mode
  std::string sex;      // optional stratification
  int trees = 500;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

json config_echo(const EvaluateArgs& a) {
  return json{{"features", a.features},
              {"manifest", a.manifest},
              {"comparison", a.comparison},
              {"scheme", a.scheme},
              {"k", a.k},
              {"repetitions", a.reps},
              {"n_features", a.n_features},
              {"selection_mode", a.selection_mode},
              {"ranking", a.ranking},
              {"sex", a.sex},
              {"trees", a.trees},
              {"seed", a.seed},
              {"out", a.out_dir},
              {"schema_version", kSchemaVersion}};
}

CvConfig make_cv_config(const EvaluateArgs& a, const LabelledTable& table) {
  if (a.n_features < 1 ||
      a.n_features > static_cast<int>(table.feature_names.size())) {
    throw Error(Err::InvalidParams, "n_features out of range");
  }
  CvConfig cfg;
  cfg.k = a.k;
  cfg.repetitions = a.reps;
  cfg.n_features = a.n_features;
  cfg.forest.n_trees = a.trees;
  cfg.seed = a.seed;
  if (a.selection_mode == "global") {
    cfg.selection_mode = SelectionMode::global;
    if (a.ranking.empty()) {
      throw Error(Err::InvalidParams, "global mode needs --ranking");
    }
    cfg.global_ranking = read_ranking_order(a.ranking, table.feature_names);
  } else if (a.selection_mode == "in_fold") {
    cfg.selection_mode = SelectionMode::in_fold;
  } else {
    throw Error(Err::InvalidParams, "selection mode must be in_fold or global");
  }
  return cfg;
}

std::optional<Sex> parse_sex_filter(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const Sex sex = parse_sex(s);
  if (sex == Sex::Unknown) {
    throw Error(Err::InvalidParams, "--sex must be F or M");
  }
  return sex;
}

int cmd_evaluate(const EvaluateArgs& a) {
  const Comparison cmp = parse_comparison(a.comparison);
  const FeatureCsv fc = read_feature_csv(a.features);
  const Manifest manifest = load_manifest(a.manifest);
  const LabelledTable table =
      build_table(fc, manifest, cmp, parse_sex_filter(a.sex));
  const CvConfig cfg = make_cv_config(a, table);

  CvReport main_report;
  if (a.scheme == "kfold") {
    main_report = balanced_kfold_cv(table, cfg);
  } else if (a.scheme == "loso") {
    main_report = loso_cv(table, cfg);
  } else {
    throw Error(Err::InvalidParams, "scheme must be kfold or loso");
  }
  const CvReport baseline = random_baseline_cv(table, cfg);

  fs::create_directories(a.out_dir);
  {
    json doc = {{"config", config_echo(a)},
                {"comparison", cmp.label},
                {"n_recordings", table.n_rows()},
                {"report", report_to_json(main_report)},
                {"randomized_baseline", report_to_json(baseline)}};
    std::ofstream out(fs::path(a.out_dir) / "report.json");
    out << doc.dump(2) << "\n";
  }
  {
    std::vector<csv::Row> rows;
    rows.push_back({"comparison", "scheme", "n_features", "selection_mode",
                    "mean_sensitivity", "sd_sensitivity", "mean_specificity",
                    "sd_specificity"});
    auto add = [&](const CvReport& r) {
      rows.push_back({cmp.label, scheme_name(r.scheme),
                      std::to_string(r.n_features),
                      selection_mode_name(r.selection_mode),
                      csv::format_double(r.mean_sensitivity),
                      csv::format_double(r.sd_sensitivity),
                      csv::format_double(r.mean_specificity),
                      csv::format_double(r.sd_specificity)});
    };
    add(main_report);
    add(baseline);
    csv::write_file((fs::path(a.out_dir) / "summary.csv").string(), rows);
  }
  {
    // plot data: the two most salient features on the full comparison
    const RankingTable rt = rank_ensemble(global_matrix(table), cfg.vote);
    const auto f1 = static_cast<std::size_t>(rt.aggregate_order[0]);
    const auto f2 = static_cast<std::size_t>(rt.aggregate_order[1]);
    std::map<std::string, const ManifestRow*> by_path;
    for (const auto& row : manifest.rows) by_path[row.recording_path] = &row;
    std::vector<csv::Row> rows;
    rows.push_back({"recording_id", "group", "feature1_name", "feature1_value",
                    "feature2_name", "feature2_value"});
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
      rows.push_back({table.recording_ids[r],
                      group_name(by_path.at(table.recording_ids[r])->group),
                      table.feature_names[f1],
                      csv::format_double(table.values[r][f1]),
                      table.feature_names[f2],
                      csv::format_double(table.values[r][f2])});
    }
    csv::write_file((fs::path(a.out_dir) / "scatter.csv").string(), rows);
  }
  std::cout << scheme_name(main_report.scheme) << " " << cmp.label
            << ": sensitivity " << main_report.mean_sensitivity << "% (SD "
            << main_report.sd_sensitivity << "%), specificity "
            << main_report.mean_specificity << "% (SD "
            << main_report.sd_specificity << "%)\n";
  return kExitOk;
}

int cmd_confound(const EvaluateArgs& a) {
  const Comparison cmp = parse_comparison(a.comparison);
  const FeatureCsv fc = read_feature_csv(a.features);
  const Manifest manifest = load_manifest(a.manifest);
  const LabelledTable table =
      build_table(fc, manifest, cmp, parse_sex_filter(a.sex));
  const CvConfig cfg = make_cv_config(a, table);

  const ConfoundingReport rep = confounding_report(table, cfg);
  fs::create_directories(a.out_dir);
  json doc = {{"config", config_echo(a)},
              {"comparison", cmp.label},
              {"avg_observations_per_leaf", rep.avg_observations_per_leaf},
              {"avg_subjects_per_leaf", rep.avg_subjects_per_leaf},
              {"avg_training_subjects", rep.avg_training_subjects},
              {"subject_fraction", rep.subject_fraction}};
  std::ofstream out(fs::path(a.out_dir) / "confound.json");
  out << doc.dump(2) << "\n";
  std::cout << "observations/leaf " << rep.avg_observations_per_leaf
            << ", subjects/leaf " << rep.avg_subjects_per_leaf
            << ", training subjects " << rep.avg_training_subjects
            << ", subject fraction " << rep.subject_fraction << "\n";
  return kExitOk;
}

struct CompareArgs {
  std::string features, manifest, comparison;
  std::string out = "stats.csv";
};

int cmd_compare(const CompareArgs& a) {
  const Comparison cmp = parse_comparison(a.comparison);
  const FeatureCsv fc = read_feature_csv(a.features);
  const Manifest manifest = load_manifest(a.manifest);
  const LabelledTable table = build_table(fc, manifest, cmp, std::nullopt);

  std::vector<csv::Row> rows;
  rows.push_back({"name", "test", "statistic", "p_value", "status"});

  // per-feature two-sample KS over recordings
  for (std::size_t j = 0; j < table.feature_names.size(); ++j) {
    std::vector<double> va, vb;
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
      const double v = table.values[r][j];
      if (!std::isfinite(v)) continue;
      (table.labels[r] == 1 ? va : vb).push_back(v);
    }
    try {
      const TestResult t = ks_test_2sample(va, vb);
      rows.push_back({table.feature_names[j], "KS2",
                      csv::format_double(t.statistic),
                      csv::format_double(t.p_value), "ok"});
    } catch (const Error& e) {
      rows.push_back(
          {table.feature_names[j], "KS2", "", "", err_name(e.code())});
    }
  }

  // demographics compared per subject, not per recording
  std::map<std::string, const ManifestRow*> by_path;
  for (const auto& row : manifest.rows) by_path[row.recording_path] = &row;
  auto subject_values = [&](int label, auto getter) {
    std::set<std::string> seen;
    std::vector<double> vals;
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
      if (table.labels[r] != label) continue;
      if (!seen.insert(table.subject_ids[r]).second) continue;
      const auto v = getter(*by_path.at(table.recording_ids[r]));
      if (v) vals.push_back(*v);
    }
    return vals;
  };
  auto add_demographic = [&](const std::string& name, TestKind kind,
                             auto getter) {
    const auto va = subject_values(1, getter);
    const auto vb = subject_values(0, getter);
    if (va.empty() && vb.empty()) return;
    try {
      const TestResult t = kind == TestKind::TTEST
                               ? t_test_unpaired(va, vb)
                               : mann_whitney_u(va, vb);
      rows.push_back({name, kind == TestKind::TTEST ? "TTEST" : "MWU",
                      csv::format_double(t.statistic),
                      csv::format_double(t.p_value), "ok"});
    } catch (const Error& e) {
      rows.push_back({name, kind == TestKind::TTEST ? "TTEST" : "MWU", "", "",
                      err_name(e.code())});
    }
  };
  add_demographic("age", TestKind::TTEST,
                  [](const ManifestRow& r) { return r.age_years; });
  add_demographic("updrs3", TestKind::MWU,
                  [](const ManifestRow& r) { return r.updrs3; });
  add_demographic("disease_duration", TestKind::MWU, [](const ManifestRow& r) {
    return r.disease_duration_years;
  });

  csv::write_file(a.out, rows);
  std::cout << "wrote " << rows.size() - 1 << " test rows to " << a.out << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"sustained-phonation dysphonia analysis toolkit", "phonia"};
  app.require_subcommand(1);
  app.set_config("--config")->configurable(false);

  SynthArgs synth_args;
  auto* synth = app.add_subcommand(
      "synth", "generate a synthetic two-group phonation cohort");
  synth->add_option("--out", synth_args.out_dir, "output directory")
      ->required();
  synth->add_option("--seed", synth_args.seed, "master seed");
  synth->add_option("--duration", synth_args.duration_s, "seconds per file");
  synth->add_option("--rate", synth_args.rate, "sample rate, Hz");
  synth->add_option("--subjects", synth_args.subjects, "subjects per group");
  synth->add_option("--recs", synth_args.recs, "recordings per subject");
  synth->add_option("--group-a", synth_args.group_a, "first group label");
  synth->add_option("--group-b", synth_args.group_b, "second group label");
  synth->add_option("--f0-lo-a", synth_args.f0_lo_a, "group A f0 low, Hz");
  synth->add_option("--f0-hi-a", synth_args.f0_hi_a, "group A f0 high, Hz");
  synth->add_option("--f0-lo-b", synth_args.f0_lo_b, "group B f0 low, Hz");
  synth->add_option("--f0-hi-b", synth_args.f0_hi_b, "group B f0 high, Hz");
  synth->add_option("--jitter-a", synth_args.jitter_a, "group A jitter, %");
  synth->add_option("--jitter-b", synth_args.jitter_b, "group B jitter, %");
  synth->add_option("--shimmer-a", synth_args.shimmer_a, "group A shimmer, %");
  synth->add_option("--shimmer-b", synth_args.shimmer_b, "group B shimmer, %");
  synth->add_option("--hnr-a", synth_args.hnr_a, "group A HNR, dB");
  synth->add_option("--hnr-b", synth_args.hnr_b, "group B HNR, dB");

  ExtractArgs extract_args;
  auto* extract = app.add_subcommand(
      "extract", "extract the 292-measure vector for every recording");
  extract->add_option("--manifest", extract_args.manifest, "manifest CSV")
      ->required();
  extract->add_option("--audio-root", extract_args.audio_root,
                      "base directory for relative audio paths");
  extract->add_option("--out", extract_args.out, "feature CSV path");
  extract->add_option("--discard-log", extract_args.discard_log,
                      "discard log path");
  extract->add_option("--schema-json", extract_args.schema_json,
                      "also write the feature schema as JSON");

  SelectArgs select_args;
  auto* select = app.add_subcommand(
      "select", "rank features with the five-selector ensemble");
  select->add_option("--features", select_args.features, "feature CSV")
      ->required();
  select->add_option("--manifest", select_args.manifest, "manifest CSV")
      ->required();
  select
      ->add_option("--comparison", select_args.comparison,
                   "e.g. LRRK2_PD:IPD or NMC+LRRK2_PD:IPD")
      ->required();
  select->add_option("--out", select_args.out, "ranking CSV path");
  select->add_option("--top-m", select_args.top_m,
                     "top window for vote counting");

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand(
      "evaluate", "cross-validated discrimination with a random baseline");
  auto add_eval_options = [](CLI::App* cmd, EvaluateArgs& a) {
    cmd->add_option("--features", a.features, "feature CSV")->required();
    cmd->add_option("--manifest", a.manifest, "manifest CSV")->required();
    cmd->add_option("--comparison", a.comparison, "group comparison A:B")
        ->required();
    cmd->add_option("--scheme", a.scheme, "kfold or loso");
    cmd->add_option("--k", a.k, "folds");
    cmd->add_option("--reps", a.reps, "repetitions");
    cmd->add_option("--n-features", a.n_features, "features used");
    cmd->add_option("--selection-mode", a.selection_mode,
                    "in_fold or global");
    cmd->add_option("--ranking", a.ranking, "ranking CSV for global mode");
    cmd->add_option("--sex", a.sex, "restrict to one sex (F or M)");
    cmd->add_option("--trees", a.trees, "trees per forest");
    cmd->add_option("--seed", a.seed, "master seed");
    cmd->add_option("--out", a.out_dir, "output directory");
  };
  add_eval_options(evaluate, eval_args);

  EvaluateArgs confound_args;
  auto* confound = app.add_subcommand(
      "confound", "identity-confounding audit via per-leaf subject census");
  add_eval_options(confound, confound_args);

  CompareArgs compare_args;
  auto* compare = app.add_subcommand(
      "compare", "per-feature and demographic hypothesis tests");
  compare->add_option("--features", compare_args.features, "feature CSV")
      ->required();
  compare->add_option("--manifest", compare_args.manifest, "manifest CSV")
      ->required();
  compare
      ->add_option("--comparison", compare_args.comparison,
                   "group comparison A:B")
      ->required();
  compare->add_option("--out", compare_args.out, "stats CSV path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (synth->parsed()) return cmd_synth(synth_args);
    if (extract->parsed()) return cmd_extract(extract_args);
    if (select->parsed()) return cmd_select(select_args);
    if (evaluate->parsed()) return cmd_evaluate(eval_args);
    if (confound->parsed()) return cmd_confound(confound_args);
    if (compare->parsed()) return cmd_compare(compare_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitValidation;
}

}  // namespace phonia
