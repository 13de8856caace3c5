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

#ifndef PHONIA_FEATURES_HPP_
#define PHONIA_FEATURES_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phonia/audio.hpp"
#include "phonia/contour.hpp"

namespace phonia {

inline constexpr std::size_t kFeatureCount = 292;
inline constexpr const char* kSchemaVersion = "phonia-292-v1";

enum class FeatureCategory {
  descriptive,
  vocal_fold,
  cepstral,
  aeroacoustic,
  wavelet,
};

const char* category_name(FeatureCategory c);

struct FeatureDef {
  std::string name;
  FeatureCategory category;
  std::string description;
};

// The fixed 292-measure inventory. Singleton; ordering and names are part
// of the file-format contract (feature CSV header, ranking exports).
class FeatureSchema {
 public:
  static const FeatureSchema& instance();

  const std::vector<FeatureDef>& defs() const { return defs_; }
  std::size_t size() const { return defs_.size(); }
  // -1 when the name is not in the schema
  int index_of(const std::string& name) const;
  const FeatureDef& at(std::size_t i) const { return defs_[i]; }
  std::string to_json() const;

 private:
  FeatureSchema();
  std::vector<FeatureDef> defs_;
};

struct FeatureVector {
  std::vector<double> values;  // kFeatureCount entries; NaN where missing
  std::vector<bool> missing;
  std::string schema_version = kSchemaVersion;

  std::size_t missing_count() const;
};

using NamedValues = std::vector<std::pair<std::string, double>>;

struct MfccConfig {
  double window_seconds = 0.025;
  double hop_seconds = 0.010;
  int n_filters = 26;
  int n_coeffs = 13;
};

struct RpdeConfig {
  int dim = 4;
  double radius_factor = 0.12;  // times the embedded-signal SD
  double f0_min_hz = 50.0;      // sets the maximum recurrence time
  double fallback_f0_hz = 150.0;
  std::size_t max_anchors = 30000;
};

struct DfaConfig {
  std::size_t min_box = 50;
  std::size_t max_box = 1000;
  std::size_t n_boxes = 10;
};

struct PpeConfig {
  int bins = 30;
  double range_semitones = 4.0;
};

struct BandConfig {
  double bandwidth_hz = 500.0;
  double hop_hz = 100.0;
  double top_hz = 4500.0;  // highest band edge when bandwidth allows
};

struct WaveletConfig {
  int levels = 10;
  std::size_t resample_length = 1024;
};

struct FeatureConfig {
  PitchConfig pitch;
  MfccConfig mfcc;
  RpdeConfig rpde;
  DfaConfig dfa;
  PpeConfig ppe;
  BandConfig band;
  WaveletConfig wavelet;
};

// --- perturbation families (contour-based) ---
NamedValues jitter_family(const CycleContour& contour);
NamedValues shimmer_family(const CycleContour& contour);
NamedValues pq_gq(const CycleContour& contour, const Segment& seg);

// --- cepstral ---
// Per-frame MFCC matrix (frames x n_coeffs), 25 ms Hamming windows on a
// 10 ms hop, 26-filter mel bank, DCT; coefficient j is the j-th cosine
// component of the log mel energies (the constant term is dropped).
std::vector<std::vector<double>> mfcc_frames(const Segment& seg,
                                             const MfccConfig& cfg = {});
NamedValues mfcc_summaries(const Segment& seg, const MfccConfig& cfg = {});

// --- aeroacoustic / nonlinear ---
double rpde(const Segment& seg, const RpdeConfig& cfg = {});

struct DfaResult {
  double alpha = 0.0;     // scaling exponent
  double squashed = 0.0;  // 1 / (1 + exp(-alpha))
};
DfaResult dfa(const Segment& seg, const DfaConfig& cfg = {});
DfaResult dfa_series(std::span<const double> x, const DfaConfig& cfg = {});

double ppe(const CycleContour& contour, const PpeConfig& cfg = {});
double hnr_feature(const Segment& seg);  // schema name HNR(1)

NamedValues gne(const Segment& seg, const BandConfig& cfg = {});
NamedValues vfer(const Segment& seg);

// --- wavelet ---
NamedValues wavelet_features(const CycleContour& contour,
                             const WaveletConfig& cfg = {});

// Full vector in schema order. Block failures are recorded as missing
// values rather than aborting; a failed cycle contour aborts with
// ContourFailure since most of the inventory depends on it.
FeatureVector extract_all(const Segment& seg, const FeatureConfig& cfg = {});

}  // namespace phonia

#endif  // PHONIA_FEATURES_HPP_
