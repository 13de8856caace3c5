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

#ifndef PHONIA_CONTOUR_HPP_
#define PHONIA_CONTOUR_HPP_

#include <span>
#include <vector>

#include "phonia/audio.hpp"

namespace phonia {

// Per-glottal-cycle track. Cycle marks are fractional sample positions
// (parabolic-refined waveform peaks) so period estimates are not quantized
// to the sample grid.
struct CycleContour {
  std::vector<double> cycle_starts;  // ascending, fractional samples
  std::vector<double> f0_hz;         // one per cycle
  std::vector<double> a0;            // per-cycle peak amplitude, >= 0
  int sample_rate_hz = 0;

  std::size_t num_cycles() const { return f0_hz.size(); }
  // cycle periods in seconds, same length as f0_hz
  std::vector<double> periods_seconds() const;
};

struct PitchConfig {
  double f0_min_hz = 50.0;
  double f0_max_hz = 500.0;
  double frame_seconds = 0.040;
  double voicing_threshold = 0.50;
  // next-mark search half-width as a fraction of the local period
  double search_width = 0.25;
};

// Autocorrelation-guided cycle picking: a frame-level period track anchors
// per-cycle waveform peak marks inside voiced runs. f0_hz[i] is
// rate / (cycle_starts[i+1] - cycle_starts[i]); a0[i] is the refined peak
// magnitude inside cycle i. Throws NoVoicedCycles below 10 cycles.
CycleContour detect_cycles(const Segment& seg, const PitchConfig& cfg = {});

// Teager-Kaiser energy: y[n] = x[n]^2 - x[n-1]*x[n+1] for interior points.
// Output length is input length - 2; input must hold at least 3 samples.
std::vector<double> tkeo(std::span<const double> x);

// Parabolic-refined peak magnitude of |x| inside each interval between
// consecutive fractional marks. marks.size() - 1 values. Shared by cycle
// detection and the synthetic ground truth so both measure amplitude the
// same way.
std::vector<double> cycle_peak_amplitudes(std::span<const double> x,
                                          std::span<const double> marks);

}  // namespace phonia

#endif  // PHONIA_CONTOUR_HPP_
