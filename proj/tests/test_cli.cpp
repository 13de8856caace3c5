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

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "phonia/cli.hpp"
#include "phonia/csv.hpp"
#include "phonia/synth.hpp"
#include "test_util.hpp"

using namespace phonia;
using namespace phonia::testutil;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// one extracted mini-cohort shared by the pipeline cases
struct Pipeline {
  TempDir dir{"cli"};
  std::string manifest;
  std::string features;

  Pipeline() {
    REQUIRE(run_cli({"synth", "--out", dir.file("cohort"), "--subjects", "3",
                     "--recs", "2", "--duration", "2.3", "--jitter-a", "3.0",
                     "--jitter-b", "0.3", "--seed", "5"}) == kExitOk);
    manifest = dir.file("cohort/manifest.csv");
    features = dir.file("features.csv");
    REQUIRE(run_cli({"extract", "--manifest", manifest, "--out", features}) ==
            kExitOk);
  }
};

Pipeline& pipeline() {
  static Pipeline p;
  return p;
}

}  // namespace

TEST_CASE("extract emits one row per accepted recording, deterministically") {
  auto& p = pipeline();
  const auto rows = csv::read_file(p.features);
  REQUIRE(rows.size() == 13);  // header + 12 recordings
  CHECK(rows[0].size() == 293);
  CHECK(rows[0][0] == "recording_id");

  // byte-identical rerun
  const std::string again = p.dir.file("features_again.csv");
  REQUIRE(run_cli({"extract", "--manifest", p.manifest, "--out", again}) ==
          kExitOk);
  CHECK(slurp(p.features) == slurp(again));
}

TEST_CASE("extract writes the schema on request and logs discards") {
  auto& p = pipeline();
  TempDir dir("cli_schema");
  // add a too-short recording to the cohort copy
  const std::string manifest2 = dir.file("manifest.csv");
  {
    const auto rows = csv::read_file(p.manifest);
    auto copy = rows;
    SynthParams sp;
    sp.duration_s = 1.0;  // below the two-second gate
    sp.seed = 9;
    const SynthResult r = generate_phonation(sp);
    write_wav(dir.file("short.wav"), r.recording.samples, 44100);
    copy.push_back({"short.wav", "ODD_S1", "CONTROL", "F", "60", "", ""});
    // audio paths in the original manifest are relative to the cohort dir
    for (std::size_t i = 1; i + 1 < copy.size(); ++i) {
      copy[i][0] = p.dir.file("cohort/" + copy[i][0]);
    }
    csv::write_file(manifest2, copy);
  }
  const std::string out = dir.file("features.csv");
  const std::string log = dir.file("discards.txt");
  const std::string schema = dir.file("schema.json");
  REQUIRE(run_cli({"extract", "--manifest", manifest2, "--audio-root",
                   dir.str(), "--out", out, "--discard-log", log,
                   "--schema-json", schema}) == kExitOk);

  const auto rows = csv::read_file(out);
  CHECK(rows.size() == 13);  // the short file is gone
  const std::string log_text = slurp(log);
  CHECK(log_text.find("short.wav") != std::string::npos);
  CHECK(log_text.find("TooShort") != std::string::npos);

  const auto doc = nlohmann::json::parse(slurp(schema));
  CHECK(doc["features"].size() == 292);
  CHECK(doc["schema_version"].get<std::string>() == "phonia-292-v1");
}

TEST_CASE("select writes a full ranking table") {
  auto& p = pipeline();
  const std::string out = p.dir.file("ranking.csv");
  REQUIRE(run_cli({"select", "--features", p.features, "--manifest",
                   p.manifest, "--comparison", "LRRK2_PD:IPD", "--out",
                   out}) == kExitOk);
  const auto rows = csv::read_file(out);
  REQUIRE(rows.size() == 293);
  CHECK(rows[0] == csv::Row{"feature_name", "rank_mrmr", "rank_gso",
                            "rank_relief", "rank_llbfs", "rank_lasso",
                            "vote_count", "aggregate_rank"});
  // a jitter-family feature should surface in the aggregate top ten
  bool jitter_in_top10 = false;
  for (const auto& row : rows) {
    if (row.size() < 8 || row[0] == "feature_name") continue;
    const int agg = std::stoi(row[7]);
    if (agg <= 10 && (row[0] == "relJitter" || row[0] == "medJitter" ||
                      row[0] == "absJitter" || row[0] == "RAP" ||
                      row[0] == "PPQ5" || row[0] == "PPQ11")) {
      jitter_in_top10 = true;
    }
  }
  CHECK(jitter_in_top10);
}

TEST_CASE("evaluate produces report, summary, scatter, and baseline") {
  auto& p = pipeline();
  const std::string out_dir = p.dir.file("eval");
  REQUIRE(run_cli({"evaluate", "--features", p.features, "--manifest",
                   p.manifest, "--comparison", "LRRK2_PD:IPD", "--reps", "5",
                   "--trees", "100", "--seed", "17", "--out", out_dir}) ==
          kExitOk);

  const auto doc = nlohmann::json::parse(slurp(out_dir + "/report.json"));
  CHECK(doc["report"]["scheme"] == "KFOLD_BALANCED");
  CHECK(doc["report"]["sensitivity_per_repetition"].size() == 5);
  CHECK(doc["randomized_baseline"]["scheme"] == "RANDOM_BASELINE");
  CHECK(doc["config"]["schema_version"] == "phonia-292-v1");
  CHECK(doc["config"]["seed"] == 17);
  const double base_sens =
      doc["randomized_baseline"]["mean_sensitivity"].get<double>();
  CHECK(base_sens > 25.0);  // five repetitions are noisy; just sanity
  CHECK(base_sens < 75.0);

  const auto summary = csv::read_file(out_dir + "/summary.csv");
  REQUIRE(summary.size() == 3);  // header + scheme + baseline
  CHECK(summary[1][1] == "KFOLD_BALANCED");
  CHECK(summary[2][1] == "RANDOM_BASELINE");

  const auto scatter = csv::read_file(out_dir + "/scatter.csv");
  REQUIRE(scatter.size() == 13);
  CHECK(scatter[0] == csv::Row{"recording_id", "group", "feature1_name",
                               "feature1_value", "feature2_name",
                               "feature2_value"});
  for (std::size_t r = 1; r < scatter.size(); ++r) {
    CHECK((scatter[r][1] == "LRRK2_PD" || scatter[r][1] == "IPD"));
  }
}

TEST_CASE("evaluate supports loso and global selection modes") {
  auto& p = pipeline();
  const std::string ranking = p.dir.file("ranking.csv");  // from select case
  REQUIRE(run_cli({"select", "--features", p.features, "--manifest",
                   p.manifest, "--comparison", "LRRK2_PD:IPD", "--out",
                   ranking}) == kExitOk);
  const std::string out_dir = p.dir.file("eval_loso");
  REQUIRE(run_cli({"evaluate", "--features", p.features, "--manifest",
                   p.manifest, "--comparison", "LRRK2_PD:IPD", "--scheme",
                   "loso", "--reps", "3", "--trees", "60", "--selection-mode",
                   "global", "--ranking", ranking, "--out", out_dir}) ==
          kExitOk);
  const auto doc = nlohmann::json::parse(slurp(out_dir + "/report.json"));
  CHECK(doc["report"]["scheme"] == "LOSO");
  CHECK(doc["report"]["selection_mode"] == "global");
}

TEST_CASE("confound emits the four census numbers") {
  auto& p = pipeline();
  const std::string out_dir = p.dir.file("confound");
  REQUIRE(run_cli({"confound", "--features", p.features, "--manifest",
                   p.manifest, "--comparison", "LRRK2_PD:IPD", "--reps", "2",
                   "--trees", "50", "--out", out_dir}) == kExitOk);
  const auto doc = nlohmann::json::parse(slurp(out_dir + "/confound.json"));
  CHECK(doc.contains("avg_observations_per_leaf"));
  CHECK(doc.contains("avg_subjects_per_leaf"));
  CHECK(doc.contains("avg_training_subjects"));
  const double fraction = doc["subject_fraction"].get<double>();
  CHECK(fraction > 0.0);
  CHECK(fraction <= 1.0);

  // deterministic rerun
  const std::string out2 = p.dir.file("confound2");
  REQUIRE(run_cli({"confound", "--features", p.features, "--manifest",
                   p.manifest, "--comparison", "LRRK2_PD:IPD", "--reps", "2",
                   "--trees", "50", "--out", out2}) == kExitOk);
  CHECK(nlohmann::json::parse(slurp(out2 + "/confound.json"))
            ["subject_fraction"].get<double>() == fraction);
}

TEST_CASE("compare runs tests per feature plus demographics") {
  auto& p = pipeline();
  const std::string out = p.dir.file("stats.csv");
  REQUIRE(run_cli({"compare", "--features", p.features, "--manifest",
                   p.manifest, "--comparison", "LRRK2_PD:IPD", "--out",
                   out}) == kExitOk);
  const auto rows = csv::read_file(out);
  // header + 292 features + age (updrs3/duration are absent in the cohort)
  REQUIRE(rows.size() == 294);
  CHECK(rows[0] == csv::Row{"name", "test", "statistic", "p_value", "status"});
  CHECK(rows.back()[0] == "age");
  CHECK(rows.back()[1] == "TTEST");

  // the jitter gap must reach significance
  bool medjitter_significant = false;
  for (const auto& row : rows) {
    if (row[0] == "medJitter" && row[4] == "ok") {
      medjitter_significant = std::stod(row[3]) < 0.01;
    }
  }
  CHECK(medjitter_significant);
}

TEST_CASE("identical groups give near-unit p values") {
  auto& p = pipeline();
  TempDir dir("cli_same");
  // same recordings listed twice under both labels via copied files
  const auto manifest_rows = csv::read_file(p.manifest);
  std::vector<csv::Row> rows{manifest_rows[0]};
  for (std::size_t r = 1; r < manifest_rows.size(); ++r) {
    auto row = manifest_rows[r];
    const std::string src = p.dir.file("cohort/" + row[0]);
    for (const char* side : {"A", "B"}) {
      auto copy = row;
      copy[0] = std::string(side) + "_" + row[0];
      copy[1] = std::string(side) + "_" + row[1];
      copy[2] = side[0] == 'A' ? "NMC" : "RNC";
      std::filesystem::copy_file(src, dir.file(copy[0]));
      rows.push_back(copy);
    }
  }
  csv::write_file(dir.file("manifest.csv"), rows);
  const std::string features = dir.file("features.csv");
  REQUIRE(run_cli({"extract", "--manifest", dir.file("manifest.csv"), "--out",
                   features}) == kExitOk);
  const std::string out = dir.file("stats.csv");
  REQUIRE(run_cli({"compare", "--features", features, "--manifest",
                   dir.file("manifest.csv"), "--comparison", "NMC:RNC",
                   "--out", out}) == kExitOk);
  for (const auto& row : csv::read_file(dir.file("stats.csv"))) {
    if (row[0] == "name" || row[4] != "ok" || row[1] != "KS2") continue;
    CHECK(std::stod(row[3]) >= 0.99);
  }
}

TEST_CASE("union comparisons merge group labels") {
  auto& p = pipeline();
  const std::string out = p.dir.file("union_ranking.csv");
  CHECK(run_cli({"select", "--features", p.features, "--manifest", p.manifest,
                 "--comparison", "LRRK2_PD+NMC:IPD", "--out", out}) ==
        kExitOk);
}

TEST_CASE("config files feed defaults and flags win") {
  auto& p = pipeline();
  TempDir dir("cli_config");
  {
    std::ofstream cfg(dir.file("run.toml"));
    cfg << "[evaluate]\n";
    cfg << "features = \"" << p.features << "\"\n";
    cfg << "manifest = \"" << p.manifest << "\"\n";
    cfg << "comparison = \"LRRK2_PD:IPD\"\n";
    cfg << "reps = 2\n";
    cfg << "trees = 40\n";
    cfg << "seed = 77\n";
  }
  const std::string out1 = dir.file("from_config");
  REQUIRE(run_cli({"evaluate", "--config", dir.file("run.toml"), "--out",
                   out1}) == kExitOk);
  auto doc = nlohmann::json::parse(slurp(out1 + "/report.json"));
  CHECK(doc["config"]["seed"] == 77);
  CHECK(doc["report"]["repetitions"] == 2);

  // a command-line flag overrides the config value
  const std::string out2 = dir.file("flag_wins");
  REQUIRE(run_cli({"evaluate", "--config", dir.file("run.toml"), "--seed",
                   "99", "--out", out2}) == kExitOk);
  doc = nlohmann::json::parse(slurp(out2 + "/report.json"));
  CHECK(doc["config"]["seed"] == 99);
}

TEST_CASE("evaluate is byte-stable for a fixed seed and supports --sex") {
  auto& p = pipeline();
  const std::string out1 = p.dir.file("stable1");
  const std::string out2 = p.dir.file("stable2");
  for (const std::string& out : {out1, out2}) {
    REQUIRE(run_cli({"evaluate", "--features", p.features, "--manifest",
                     p.manifest, "--comparison", "LRRK2_PD:IPD", "--reps",
                     "3", "--trees", "50", "--seed", "21", "--out", out}) ==
            kExitOk);
  }
  // reports differ only in the echoed output path
  auto scrubbed = [&](const std::string& path) {
    auto doc = nlohmann::json::parse(slurp(path));
    doc["config"].erase("out");
    return doc.dump();
  };
  CHECK(scrubbed(out1 + "/report.json") == scrubbed(out2 + "/report.json"));
  CHECK(slurp(out1 + "/summary.csv") == slurp(out2 + "/summary.csv"));
  CHECK(slurp(out1 + "/scatter.csv") == slurp(out2 + "/scatter.csv"));

  // sex stratification keeps only matching recordings in the plot data
  const std::string out_f = p.dir.file("sex_f");
  REQUIRE(run_cli({"evaluate", "--features", p.features, "--manifest",
                   p.manifest, "--comparison", "LRRK2_PD:IPD", "--reps", "2",
                   "--trees", "40", "--sex", "F", "--out", out_f}) == kExitOk);
  const auto scatter = csv::read_file(out_f + "/scatter.csv");
  // subjects alternate F/M; two of three subjects per group are F
  CHECK(scatter.size() == 9);  // header + 8 recordings
}

TEST_CASE("exit codes distinguish validation and data errors") {
  auto& p = pipeline();
  // unknown flag
  CHECK(run_cli({"evaluate", "--bogus"}) == kExitValidation);
  // malformed comparison
  CHECK(run_cli({"select", "--features", p.features, "--manifest", p.manifest,
                 "--comparison", "LRRK2_PD_vs_IPD", "--out",
                 p.dir.file("x.csv")}) == kExitValidation);
  // unknown group name
  CHECK(run_cli({"select", "--features", p.features, "--manifest", p.manifest,
                 "--comparison", "XYZ:IPD", "--out", p.dir.file("x.csv")}) ==
        kExitValidation);
  // missing file
  CHECK(run_cli({"extract", "--manifest", "/definitely/not/here.csv",
                 "--out", p.dir.file("x.csv")}) == kExitData);
  // n_features out of range
  CHECK(run_cli({"evaluate", "--features", p.features, "--manifest",
                 p.manifest, "--comparison", "LRRK2_PD:IPD", "--n-features",
                 "500", "--out", p.dir.file("x")}) == kExitValidation);
  // group on both sides
  CHECK(run_cli({"select", "--features", p.features, "--manifest", p.manifest,
                 "--comparison", "IPD+NMC:IPD", "--out",
                 p.dir.file("x.csv")}) == kExitValidation);
}
