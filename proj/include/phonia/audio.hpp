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

#ifndef PHONIA_AUDIO_HPP_
#define PHONIA_AUDIO_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace phonia {

enum class Group { LRRK2_PD, IPD, NMC, RNC, CONTROL };
enum class Sex { F, M, Unknown };

Group parse_group(const std::string& label);
const char* group_name(Group g);
Sex parse_sex(const std::string& label);
const char* sex_name(Sex s);

struct Recording {
  std::string id;
  std::string subject_id;
  Group group = Group::CONTROL;
  Sex sex = Sex::Unknown;
  std::optional<double> age_years;
  std::optional<double> updrs3;
  std::optional<double> disease_duration_years;
  std::vector<double> samples;  // mono, in [-1, 1]
  int sample_rate_hz = 0;

  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

// Trimmed usable phonation window. Holds a copy of the trimmed samples so
// it stays valid independently of the Recording it came from.
struct Segment {
  std::string recording_id;
  std::size_t start_sample = 0;
  std::size_t end_sample = 0;  // exclusive
  std::vector<double> samples;
  int sample_rate_hz = 0;

  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
  std::span<const double> view() const { return samples; }
};

// Reads a RIFF/WAVE file. PCM 8/16/24/32-bit integer and 32/64-bit float
// encodings are accepted; multi-channel input is reduced to channel 0 and
// integer samples are normalized to [-1, 1]. Metadata fields stay unset
// until the manifest join.
Recording load_wav(const std::string& path);

// Writes 16-bit PCM mono.
void write_wav(const std::string& path, std::span<const double> samples,
               int sample_rate_hz);

struct SegmentConfig {
  double frame_seconds = 0.010;   // analysis grid; window edges snap to it
  double energy_floor = 0.10;     // fraction of median voiced-frame energy
  double voicing_threshold = 0.50;  // autocorrelation peak for periodicity
  double f0_min_hz = 50.0;
  double f0_max_hz = 500.0;
};

// Longest contiguous run of frames that are both energetic and periodic.
// Throws NoUsableSegment when nothing qualifies.
Segment select_segment(const Recording& rec, const SegmentConfig& cfg = {});

enum class GateReason { Accepted, TooShort, TooNoisy };

struct GateConfig {
  double min_duration_seconds = 2.0;  // inclusive boundary
  double hnr_floor_db = 5.0;
};

struct GateResult {
  GateReason reason = GateReason::Accepted;
  double duration_seconds = 0.0;
  double hnr_db = 0.0;
  bool accepted() const { return reason == GateReason::Accepted; }
};

GateResult quality_gate(const Segment& seg, const GateConfig& cfg = {});

const char* gate_reason_name(GateReason r);

}  // namespace phonia

#endif  // PHONIA_AUDIO_HPP_
