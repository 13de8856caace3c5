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

#ifndef PHONIA_SYNTH_HPP_
#define PHONIA_SYNTH_HPP_

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "phonia/audio.hpp"

namespace phonia {

struct SynthParams {
  double f0_hz = 120.0;
  double jitter_pct = 0.0;   // relative SD of per-cycle period, percent
  double shimmer_pct = 0.0;  // relative SD of per-cycle amplitude, percent
  double hnr_db = std::numeric_limits<double>::infinity();
  double duration_s = 3.0;
  int sample_rate_hz = 44100;
  int n_harmonics = 25;
  std::uint64_t seed = 0;
};

// Realized per-cycle ground truth. The definitional perturbation values
// (mean absolute successive change over the mean) are what the analysis
// chain should recover; with Gaussian cycle perturbations they differ from
// the nominal SD by a known factor, so recovery is checked against these.
struct SynthTruth {
  std::vector<double> periods_samples;
  std::vector<double> amplitudes;
  double f0_mean_hz = 0.0;     // mean of per-cycle rate/period
  double jitter_pct = 0.0;     // mean|dT| / mean T * 100
  double shimmer_pct = 0.0;    // mean|dA| / mean A * 100
  double hnr_db = 0.0;         // realized harmonic-to-noise power ratio
};

struct SynthResult {
  Recording recording;
  SynthTruth truth;
};

// Pulse-like harmonic source (cosine sum peaking at phase zero, so cycle
// peaks land exactly on the per-cycle period accumulation) with i.i.d.
// Gaussian period and amplitude perturbations and additive white noise
// scaled to the requested harmonic-to-noise ratio. Peak-normalized to 0.9.
// Deterministic per seed.
SynthResult generate_phonation(const SynthParams& p);

double definitional_perturbation_pct(const std::vector<double>& series);

struct CohortGroupParams {
  Group group = Group::IPD;
  int n_subjects = 10;
  int recordings_per_subject = 2;
  double f0_lo_hz = 100.0, f0_hi_hz = 180.0;
  double jitter_pct = 0.5, jitter_sd = 0.1;   // between-subject spread
  double shimmer_pct = 3.0, shimmer_sd = 0.5;
  double hnr_db = 20.0, hnr_sd = 2.0;
};

struct CohortSpec {
  CohortGroupParams group_a;
  CohortGroupParams group_b;
  double duration_s = 3.0;
  int sample_rate_hz = 44100;
  std::uint64_t seed = 1;
};

// Writes WAVs, per-file ground-truth JSON sidecars, and a manifest CSV
// under out_dir. Returns the manifest path.
std::string generate_cohort(const CohortSpec& spec, const std::string& out_dir);

}  // namespace phonia

#endif  // PHONIA_SYNTH_HPP_
