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

#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "phonia/error.hpp"
#include "phonia/features.hpp"

namespace phonia {

const char* category_name(FeatureCategory c) {
  switch (c) {
    case FeatureCategory::descriptive: return "descriptive";
    case FeatureCategory::vocal_fold: return "vocal_fold";
    case FeatureCategory::cepstral: return "cepstral";
    case FeatureCategory::aeroacoustic: return "aeroacoustic";
    case FeatureCategory::wavelet: return "wavelet";
  }
  return "?";
}

namespace {

// name patterns for one 13-statistic descriptive block; {} is replaced by
// nothing here, the per-series spelling is handled below
struct SeriesNames {
  const char* series_desc;
  std::vector<std::string> names;
};

std::vector<std::string> stat_names_plain() {
  return {"Mean", "Median", "SD",        "Skewness",  "Kurtosis",
          "IQR",  "Q1",     "Q3",        "prctile5",  "prctile95",
          "Mode", "Min",    "Max"};
}

std::vector<std::string> stat_names_suffixed(const std::string& suffix) {
  // e.g. suffix "_F0" -> mean_F0 ... mode_F0
  return {"mean" + suffix,      "median" + suffix,    "std" + suffix,
          "skew" + suffix,      "kurt" + suffix,      "iqr" + suffix,
          "Q1" + suffix,        "Q3" + suffix,        "prctile5" + suffix,
          "prctile95" + suffix, "mode" + suffix,      "min" + suffix,
          "max" + suffix};
}

std::vector<std::string> stat_names_parenthesized(const std::string& arg) {
  auto wrap = [&](const std::string& s) { return s + "(" + arg + ")"; };
  return {wrap("Mean"),      wrap("Median"),    wrap("SD"),
          wrap("Skewness"),  wrap("Kurtosis"),  wrap("IQR"),
          wrap("Q1"),        wrap("Q3"),        wrap("prctile5"),
          wrap("prctile95"), wrap("Mode"),      wrap("Min"),
          wrap("Max")};
}

std::vector<std::string> stat_names_tkeo(const std::string& suffix) {
  // e.g. suffix "_A0" -> meanTKEO_A0, prctile50TKEO_A0 (the median), ...
  auto n = [&](const std::string& s) { return s + "TKEO" + suffix; };
  return {n("mean"),      n("prctile50"), n("std"),  n("skew"), n("kurt"),
          n("iqr"),       n("Q1"),        n("Q3"),   n("prctile5"),
          n("prctile95"), n("mode"),      n("min"),  n("max")};
}

}  // namespace

FeatureSchema::FeatureSchema() {
  defs_.reserve(kFeatureCount);
  auto add = [&](const std::string& name, FeatureCategory cat,
                 const std::string& desc) {
    defs_.push_back({name, cat, desc});
  };
  auto add_block = [&](const std::vector<std::string>& names,
                       FeatureCategory cat, const std::string& series) {
    static const char* stat_desc[13] = {
        "mean",     "median",          "standard deviation (n-1)",
        "skewness (adjusted Fisher-Pearson)", "kurtosis (m4/m2^2)",
        "interquartile range", "first quartile", "third quartile",
        "5th percentile", "95th percentile", "histogram mode (100 bins)",
        "minimum", "maximum"};
    for (std::size_t i = 0; i < names.size(); ++i) {
      add(names[i], cat, std::string(stat_desc[i]) + " of " + series);
    }
  };

  // --- descriptive: 6 series x 13 statistics = 78 ---
  add_block(stat_names_plain(), FeatureCategory::descriptive,
            "the raw amplitude signal");
  add_block(stat_names_suffixed("_F0"), FeatureCategory::descriptive,
            "the per-cycle fundamental frequency contour");
  add_block(stat_names_parenthesized("A0"), FeatureCategory::descriptive,
            "the per-cycle peak amplitude contour");
  add_block(stat_names_tkeo(""), FeatureCategory::descriptive,
            "the Teager-Kaiser energy of the amplitude signal");
  add_block(stat_names_tkeo("_A0"), FeatureCategory::descriptive,
            "the Teager-Kaiser energy of the A0 contour");
  add_block(stat_names_tkeo("_F0"), FeatureCategory::descriptive,
            "the Teager-Kaiser energy of the F0 contour");

  // --- vocal fold: 22 ---
  const auto vf = FeatureCategory::vocal_fold;
  add("absJitter", vf, "mean absolute cycle-to-cycle period change, seconds");
  add("relJitter", vf, "mean absolute period change over mean period, %");
  add("RAP", vf, "relative average perturbation of periods, 3-point window, %");
  add("PPQ5", vf, "period perturbation quotient, 5-point window, %");
  add("PPQ11", vf, "period perturbation quotient, 11-point window, %");
  add("medJitter", vf, "median absolute period change over mean period, %");
  add("localShimmer", vf, "mean absolute A0 change over mean A0, %");
  add("dbShimmer", vf, "mean absolute cycle-to-cycle A0 ratio, dB");
  add("APQ3", vf, "amplitude perturbation quotient, 3-point window, %");
  add("APQ5", vf, "amplitude perturbation quotient, 5-point window, %");
  add("PQ11.class_Schoentgen", vf,
      "amplitude perturbation using an 11-sample window, %");
  add("medShimmer", vf, "median absolute A0 change over mean A0, %");
  add("P0", vf,
      "zeroth-order perturbation quotient: mean absolute successive "
      "relative change of cycle energy, %");
  add("PQ5_energy", vf,
      "cycle-energy deviation from the local 5-cycle average, %");
  add("PQ11_energy", vf,
      "cycle-energy deviation from the local 11-cycle average, %");
  add("PQ5_period", vf,
      "period deviation from the local 5-cycle average, %");
  add("PQ11_period", vf,
      "period deviation from the local 11-cycle average, %");
  add("GQ_mean", vf, "mean per-cycle open-phase fraction");
  add("GQ_median", vf, "median per-cycle open-phase fraction");
  add("GQ_std", vf, "SD of per-cycle open-phase fraction");
  add("GQ_prctile5", vf, "5th percentile of per-cycle open-phase fraction");
  add("GQ_prctile95", vf, "95th percentile of per-cycle open-phase fraction");

  // --- cepstral: 13 coefficients x 4 summaries = 52 ---
  const auto cc = FeatureCategory::cepstral;
  for (int k = 1; k <= 13; ++k) {
    add("medMFCC" + std::to_string(k), cc,
        "median of MFCC coefficient " + std::to_string(k) + " over frames");
  }
  for (int k = 1; k <= 13; ++k) {
    add("muMFCC" + std::to_string(k), cc,
        "mean of MFCC coefficient " + std::to_string(k) + " over frames");
  }
  for (int k = 1; k <= 13; ++k) {
    add("sdMFCC" + std::to_string(k), cc,
        "SD of MFCC coefficient " + std::to_string(k) + " over frames");
  }
  for (int k = 1; k <= 13; ++k) {
    add("muDiffMFCC" + std::to_string(k), cc,
        "mean absolute frame-to-frame delta of MFCC coefficient " +
            std::to_string(k));
  }

  // --- aeroacoustic / aperiodicity: 20 ---
  const auto ae = FeatureCategory::aeroacoustic;
  add("RPDE", ae,
      "recurrence period density entropy, 0 for periodic and 1 for "
      "stochastic signals");
  add("DFA", ae, "detrended fluctuation exponent mapped through a logistic");
  add("DFA_alpha", ae, "raw detrended fluctuation scaling exponent");
  add("PPE", ae,
      "pitch period entropy of whitened semitone pitch residuals");
  add("HNR(1)", ae,
      "harmonics-to-noise ratio from the frame-averaged autocorrelation "
      "peak, dB");
  add("GNE", ae,
      "glottal-to-noise excitation: max cross-band Hilbert envelope "
      "correlation");
  add("GNE_mean", ae, "mean cross-band Hilbert envelope correlation");
  add("GNE_std", ae, "SD of cross-band Hilbert envelope correlations");
  add("GNE-SEO", ae,
      "glottal-to-noise excitation with squared-energy-operator envelopes, "
      "max over band pairs");
  add("GNE-SEO_mean", ae, "mean cross-band squared-energy correlation");
  add("GNE-SEO_std", ae, "SD of cross-band squared-energy correlations");
  add("GNE-TKEO", ae,
      "glottal-to-noise excitation with Teager-Kaiser envelopes, max over "
      "band pairs");
  add("GNE-TKEO_mean", ae, "mean cross-band Teager-Kaiser correlation");
  add("GNE-TKEO_std", ae, "SD of cross-band Teager-Kaiser correlations");
  add("VFER-LF", ae, "share of spectral energy below 2.5 kHz");
  add("VFER-HF", ae, "share of spectral energy above 2.5 kHz");
  add("VFER-LF-TKEO", ae,
      "share of Teager-Kaiser energy carried by the band below 2.5 kHz");
  add("VFER-HF-TKEO", ae,
      "share of Teager-Kaiser energy carried by the band above 2.5 kHz");
  add("VFER-LF-entropy", ae,
      "normalized spectral Shannon entropy below 2.5 kHz");
  add("VFER-HF-entropy", ae,
      "normalized spectral Shannon entropy above 2.5 kHz");

  // --- wavelet: 2 series x 10 levels x 6 measures = 120 ---
  const auto wv = FeatureCategory::wavelet;
  auto add_wavelet_series = [&](const std::string& prefix,
                                const std::string& series) {
    for (int k = 1; k <= 10; ++k) {
      const std::string lvl = std::to_string(k);
      add(prefix + "det_entropy_log_" + lvl + "_coef", wv,
          "log-energy entropy of the level-" + lvl + " detail coefficients (" +
              series + ")");
      add(prefix + "det_entropy_shannon_" + lvl + "_coef", wv,
          "Shannon entropy of the level-" + lvl + " detail coefficients (" +
              series + ")");
      add(prefix + "Ed2_" + lvl + "_coef", wv,
          "energy of the level-" + lvl + " detail coefficients (" + series +
              ")");
      // "LT" is read as log-transformed; the mean detail TKEO is mapped
      // through sign(v)*ln(1+|v|) so negative means stay representable
      add(prefix + "det_LT_TKEO_mean_" + lvl + "_coef", wv,
          "log-transformed mean Teager-Kaiser energy of the level-" + lvl +
              " detail coefficients (" + series + ")");
      add(prefix + "app_det_TKEO_mean_" + lvl + "_coef", wv,
          "mean Teager-Kaiser energy of the level-" + lvl +
              " approximation coefficients (" + series + ")");
      add(prefix + "app_entropy_log_" + lvl + "_coef", wv,
          "log-energy entropy of the level-" + lvl +
              " approximation coefficients (" + series + ")");
    }
  };
  add_wavelet_series("", "F0 contour");
  add_wavelet_series("tkeo_", "Teager-Kaiser energy of the F0 contour");
}

const FeatureSchema& FeatureSchema::instance() {
  static const FeatureSchema schema;
  return schema;
}

int FeatureSchema::index_of(const std::string& name) const {
  static const std::unordered_map<std::string, int> lookup = [this] {
    std::unordered_map<std::string, int> m;
    for (std::size_t i = 0; i < defs_.size(); ++i) {
      m.emplace(defs_[i].name, static_cast<int>(i));
    }
    return m;
  }();
  const auto it = lookup.find(name);
  return it == lookup.end() ? -1 : it->second;
}

std::string FeatureSchema::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& d : defs_) {
    arr.push_back({{"name", d.name},
                   {"category", category_name(d.category)},
                   {"description", d.description}});
  }
  nlohmann::json doc = {{"schema_version", kSchemaVersion},
                        {"features", arr}};
  return doc.dump(2);
}

std::size_t FeatureVector::missing_count() const {
  std::size_t n = 0;
  for (bool b : missing) n += b ? 1 : 0;
  return n;
}

}  // namespace phonia
