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
#include <functional>
#include <limits>

#include "phonia/error.hpp"
#include "phonia/features.hpp"
#include "phonia/stats.hpp"

namespace phonia {

namespace {

// the descriptive section is six 13-statistic blocks at the front of the
// schema, in this statistic order (checked by the schema unit tests)
void fill_descriptive_block(FeatureVector& fv, std::size_t block,
                            const stats::Descriptive& d) {
  const double vals[13] = {d.mean, d.median, d.sd,  d.skewness, d.kurtosis,
                           d.iqr,  d.q1,     d.q3,  d.p5,       d.p95,
                           d.mode, d.min,    d.max};
  for (std::size_t i = 0; i < 13; ++i) {
    const std::size_t idx = block * 13 + i;
    if (std::isfinite(vals[i])) {
      fv.values[idx] = vals[i];
      fv.missing[idx] = false;
    }
  }
}

}  // namespace

FeatureVector extract_all(const Segment& seg, const FeatureConfig& cfg) {
  const auto& schema = FeatureSchema::instance();
  FeatureVector fv;
  fv.values.assign(schema.size(), std::numeric_limits<double>::quiet_NaN());
  fv.missing.assign(schema.size(), true);

  auto set = [&](const std::string& name, double v) {
    const int idx = schema.index_of(name);
    if (idx < 0) {
      throw Error(Err::FeatureMismatch, "unknown feature " + name);
    }
    if (std::isfinite(v)) {
      fv.values[static_cast<std::size_t>(idx)] = v;
      fv.missing[static_cast<std::size_t>(idx)] = false;
    }
  };
  auto set_all = [&](const NamedValues& nv) {
    for (const auto& [name, v] : nv) set(name, v);
  };
  // a failed block leaves its features flagged missing
  auto guarded = [&](const std::function<void()>& block) {
    try {
      block();
    } catch (const Error&) {
    }
  };

  CycleContour contour;
  try {
    contour = detect_cycles(seg, cfg.pitch);
  } catch (const Error& e) {
    throw Error(Err::ContourFailure, e.what());
  }

  guarded([&] { fill_descriptive_block(fv, 0, stats::describe(seg.samples)); });
  guarded([&] { fill_descriptive_block(fv, 1, stats::describe(contour.f0_hz)); });
  guarded([&] { fill_descriptive_block(fv, 2, stats::describe(contour.a0)); });
  guarded([&] {
    fill_descriptive_block(fv, 3, stats::describe(tkeo(seg.samples)));
  });
  guarded([&] {
    fill_descriptive_block(fv, 4, stats::describe(tkeo(contour.a0)));
  });
  guarded([&] {
    fill_descriptive_block(fv, 5, stats::describe(tkeo(contour.f0_hz)));
  });

  guarded([&] { set_all(jitter_family(contour)); });
  guarded([&] { set_all(shimmer_family(contour)); });
  guarded([&] { set_all(pq_gq(contour, seg)); });
  guarded([&] { set_all(mfcc_summaries(seg, cfg.mfcc)); });
  guarded([&] { set("RPDE", rpde(seg, cfg.rpde)); });
  guarded([&] {
    const DfaResult r = dfa(seg, cfg.dfa);
    set("DFA", r.squashed);
    set("DFA_alpha", r.alpha);
  });
  guarded([&] { set("PPE", ppe(contour, cfg.ppe)); });
  guarded([&] { set("HNR(1)", hnr_feature(seg)); });
  guarded([&] { set_all(gne(seg, cfg.band)); });
  guarded([&] { set_all(vfer(seg)); });
  guarded([&] { set_all(wavelet_features(contour, cfg.wavelet)); });

  if (fv.missing_count() * 20 > schema.size()) {  // over 5%
    throw Error(Err::TooManyMissing,
                std::to_string(fv.missing_count()) + " of " +
                    std::to_string(schema.size()) + " features missing");
  }
  return fv;
}

}  // namespace phonia
