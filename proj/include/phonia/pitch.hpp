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

#ifndef PHONIA_PITCH_HPP_
#define PHONIA_PITCH_HPP_

#include <span>
#include <vector>

namespace phonia::pitch {

// Frame-level periodicity track shared by segment selection, the quality
// gate, cycle detection, and the noise-ratio estimate.
struct Frame {
  std::size_t start = 0;       // sample index of the frame start
  double energy = 0.0;         // mean squared amplitude over the window
  double period_samples = 0.0;  // refined fractional period, 0 if none
  double r = 0.0;              // normalized autocorrelation at that period
  bool voiced = false;
};

struct TrackConfig {
  double f0_min_hz = 50.0;
  double f0_max_hz = 500.0;
  double frame_seconds = 0.040;
  double hop_seconds = 0.010;
  double voicing_threshold = 0.50;
  // competing halved/doubled period candidates whose score is within this
  // fraction of the best are resolved toward the previous frame's period
  double octave_score_slack = 0.10;
};

std::vector<Frame> track(std::span<const double> x, int rate_hz,
                         const TrackConfig& cfg = {});

// Exact normalized cross-correlation peak around an integer lag guess,
// parabolic-refined. Returns the correlation and writes the fractional lag.
double refine_period(std::span<const double> x, std::size_t frame_start,
                     std::size_t frame_len, std::size_t lag_guess,
                     double* lag_out);

// Mean frame-level periodicity r converted to a harmonics-to-noise ratio:
// 10*log10(r / (1-r)) on the frame-averaged r, capped to [-20, 40] dB.
// Averaging r before the dB map keeps the estimate stable when r is close
// to 1. Throws NoVoicedFrames when no frame carries energy.
double hnr_db(std::span<const double> x, int rate_hz, double f0_min_hz = 50.0,
              double f0_max_hz = 500.0);

}  // namespace phonia::pitch

#endif  // PHONIA_PITCH_HPP_
