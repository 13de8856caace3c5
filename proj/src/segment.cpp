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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "phonia/audio.hpp"
#include "phonia/error.hpp"
#include "phonia/pitch.hpp"

namespace phonia {

Group parse_group(const std::string& label) {
  if (label == "LRRK2_PD") return Group::LRRK2_PD;
  if (label == "IPD") return Group::IPD;
  if (label == "NMC") return Group::NMC;
  if (label == "RNC") return Group::RNC;
  if (label == "CONTROL") return Group::CONTROL;
  throw Error(Err::UnknownGroupLabel, "'" + label + "'");
}

const char* group_name(Group g) {
  switch (g) {
    case Group::LRRK2_PD: return "LRRK2_PD";
    case Group::IPD: return "IPD";
    case Group::NMC: return "NMC";
    case Group::RNC: return "RNC";
    case Group::CONTROL: return "CONTROL";
  }
  return "?";
}

Sex parse_sex(const std::string& label) {
  if (label == "F" || label == "f") return Sex::F;
  if (label == "M" || label == "m") return Sex::M;
  return Sex::Unknown;
}

const char* sex_name(Sex s) {
  switch (s) {
    case Sex::F: return "F";
    case Sex::M: return "M";
    case Sex::Unknown: return "unknown";
  }
  return "?";
}

const char* gate_reason_name(GateReason r) {
  switch (r) {
    case GateReason::Accepted: return "accepted";
    case GateReason::TooShort: return "TooShort";
    case GateReason::TooNoisy: return "TooNoisy";
  }
  return "?";
}

Segment select_segment(const Recording& rec, const SegmentConfig& cfg) {
  if (rec.samples.empty()) throw Error(Err::EmptyAudio, rec.id);

  pitch::TrackConfig tc;
  tc.f0_min_hz = cfg.f0_min_hz;
  tc.f0_max_hz = cfg.f0_max_hz;
  tc.hop_seconds = cfg.frame_seconds;
  tc.voicing_threshold = cfg.voicing_threshold;
  const auto frames = pitch::track(rec.samples, rec.sample_rate_hz, tc);

  std::vector<double> voiced_energies;
  for (const auto& f : frames) {
    if (f.voiced) voiced_energies.push_back(f.energy);
  }
  if (voiced_energies.empty()) {
    throw Error(Err::NoUsableSegment, rec.id + ": no periodic frames");
  }
  std::nth_element(voiced_energies.begin(),
                   voiced_energies.begin() + voiced_energies.size() / 2,
                   voiced_energies.end());
  const double median_energy = voiced_energies[voiced_energies.size() / 2];
  const double floor = cfg.energy_floor * median_energy;

  // longest contiguous run of frames that are both periodic and energetic
  const auto hop = static_cast<std::size_t>(
      std::lround(cfg.frame_seconds * rec.sample_rate_hz));
  std::size_t best_begin = 0, best_len = 0, run_begin = 0, run_len = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const bool usable = frames[i].voiced && frames[i].energy >= floor;
    if (usable) {
      if (run_len == 0) run_begin = i;
      ++run_len;
      if (run_len > best_len) {
        best_len = run_len;
        best_begin = run_begin;
      }
    } else {
      run_len = 0;
    }
  }
  if (best_len == 0) {
    throw Error(Err::NoUsableSegment, rec.id + ": no usable run");
  }

  Segment seg;
  seg.recording_id = rec.id;
  seg.sample_rate_hz = rec.sample_rate_hz;
  seg.start_sample = frames[best_begin].start;
  // the run extends one hop past the start of its last frame
  seg.end_sample = std::min(rec.samples.size(),
                            frames[best_begin + best_len - 1].start + hop);
  seg.samples.assign(rec.samples.begin() + static_cast<std::ptrdiff_t>(
                                               seg.start_sample),
                     rec.samples.begin() +
                         static_cast<std::ptrdiff_t>(seg.end_sample));
  return seg;
}

GateResult quality_gate(const Segment& seg, const GateConfig& cfg) {
  GateResult res;
  res.duration_seconds = seg.duration_seconds();
  if (res.duration_seconds < cfg.min_duration_seconds) {
    res.reason = GateReason::TooShort;
    return res;
  }
  try {
    res.hnr_db = pitch::hnr_db(seg.samples, seg.sample_rate_hz);
  } catch (const Error&) {
    res.reason = GateReason::TooNoisy;
    return res;
  }
  res.reason = res.hnr_db < cfg.hnr_floor_db ? GateReason::TooNoisy
                                             : GateReason::Accepted;
  return res;
}

}  // namespace phonia
