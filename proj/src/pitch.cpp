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

#include "phonia/pitch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phonia/dsp.hpp"
#include "phonia/error.hpp"

namespace phonia::pitch {

namespace {

// Local maxima of r over [lag_lo, lag_hi], best first.
std::vector<std::size_t> local_maxima(const std::vector<double>& r,
                                      std::size_t lag_lo, std::size_t lag_hi) {
  std::vector<std::size_t> peaks;
  for (std::size_t lag = std::max<std::size_t>(lag_lo, 1);
       lag <= lag_hi && lag + 1 < r.size(); ++lag) {
    if (r[lag] >= r[lag - 1] && r[lag] > r[lag + 1]) peaks.push_back(lag);
  }
  std::sort(peaks.begin(), peaks.end(),
            [&](std::size_t a, std::size_t b) { return r[a] > r[b]; });
  return peaks;
}

}  // namespace

double refine_period(std::span<const double> x, std::size_t frame_start,
                     std::size_t frame_len, std::size_t lag_guess,
                     double* lag_out) {
  const std::size_t n = x.size();
  auto usable = [&](std::size_t lag) {
    return lag >= 2 && frame_start + frame_len + lag <= n;
  };
  if (!usable(lag_guess)) {
    if (lag_out) *lag_out = static_cast<double>(lag_guess);
    return 0.0;
  }
  auto score = [&](std::size_t lag) {
    return dsp::norm_xcorr(x, frame_start, frame_len, lag);
  };

  // the FFT-based candidate can sit a sample or two off the exact
  // correlation peak; hill-climb on the exact score first
  std::size_t lag = lag_guess;
  double r0 = score(lag);
  double rm = usable(lag - 1) ? score(lag - 1) : r0;
  double rp = usable(lag + 1) ? score(lag + 1) : r0;
  for (int step = 0; step < 8; ++step) {
    if (rm > r0 && rm >= rp && usable(lag - 1)) {
      --lag;
      rp = r0;
      r0 = rm;
      rm = usable(lag - 1) ? score(lag - 1) : r0;
    } else if (rp > r0 && usable(lag + 1)) {
      ++lag;
      rm = r0;
      r0 = rp;
      rp = usable(lag + 1) ? score(lag + 1) : r0;
    } else {
      break;
    }
  }

  double value = r0;
  const double d = dsp::parabolic_peak(rm, r0, rp, &value);
  if (lag_out) *lag_out = static_cast<double>(lag) + d;
  return std::clamp(value, -1.0, 1.0);
}

std::vector<Frame> track(std::span<const double> x, int rate_hz,
                         const TrackConfig& cfg) {
  const std::size_t n = x.size();
  const auto frame_len = static_cast<std::size_t>(
      std::lround(cfg.frame_seconds * rate_hz));
  const auto hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(cfg.hop_seconds * rate_hz)));
  const auto lag_min = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::floor(rate_hz / cfg.f0_max_hz)));
  const auto lag_max =
      static_cast<std::size_t>(std::ceil(rate_hz / cfg.f0_min_hz));

  std::vector<Frame> frames;
  if (frame_len < 8 || n < frame_len + lag_max) return frames;

  double prev_period = 0.0;
  for (std::size_t i = 0; i + frame_len + lag_max <= n; i += hop) {
    Frame f;
    f.start = i;
    double energy = 0.0;
    for (std::size_t t = 0; t < frame_len; ++t) energy += x[i + t] * x[i + t];
    f.energy = energy / static_cast<double>(frame_len);
    if (f.energy < 1e-12) {
      frames.push_back(f);
      continue;
    }

    const auto acf =
        dsp::autocorr_normalized(x.subspan(i, frame_len), lag_max);
    const auto peaks = local_maxima(acf, lag_min, lag_max);
    if (peaks.empty()) {
      frames.push_back(f);
      continue;
    }

    // among near-best candidates (periodic signals score nearly as well at
    // period multiples), prefer contour continuity, otherwise the shortest
    // lag so subharmonics do not capture the track
    const double cutoff = (1.0 - cfg.octave_score_slack) * acf[peaks[0]];
    std::size_t best = peaks[0];
    double best_key = std::numeric_limits<double>::max();
    for (std::size_t cand : peaks) {
      if (acf[cand] < cutoff) continue;
      const double key = prev_period > 0.0
                             ? std::abs(static_cast<double>(cand) -
                                        prev_period)
                             : static_cast<double>(cand);
      if (key < best_key) {
        best_key = key;
        best = cand;
      }
    }

    double lag = 0.0;
    const double r = refine_period(x, i, frame_len, best, &lag);
    f.period_samples = lag;
    f.r = r;
    f.voiced = r >= cfg.voicing_threshold &&
               lag >= static_cast<double>(lag_min) - 1.0 &&
               lag <= static_cast<double>(lag_max) + 1.0;
    if (f.voiced) prev_period = lag;
    frames.push_back(f);
  }
  return frames;
}

double hnr_db(std::span<const double> x, int rate_hz, double f0_min_hz,
              double f0_max_hz) {
  TrackConfig cfg;
  cfg.f0_min_hz = f0_min_hz;
  cfg.f0_max_hz = f0_max_hz;
  cfg.voicing_threshold = 0.0;  // keep noisy frames; r itself carries the SNR
  const auto frames = track(x, rate_hz, cfg);
  const auto frame_len = static_cast<std::size_t>(
      std::lround(cfg.frame_seconds * rate_hz));
  double sum_r = 0.0;
  std::size_t used = 0;
  for (const auto& f : frames) {
    if (f.energy < 1e-12 || f.period_samples <= 0.0) continue;
    // evaluate r at integer lags near small period multiples: a fractional
    // period then has a near-integer multiple, so the periodic part reaches
    // its full correlation without sub-sample interpolation
    double r_best = 0.0;
    bool any = false;
    for (int k = 1; k <= 4; ++k) {
      const auto lag = static_cast<std::size_t>(
          std::lround(k * f.period_samples));
      if (lag < 2 || f.start + frame_len + lag > x.size()) continue;
      r_best = std::max(r_best, dsp::norm_xcorr(x, f.start, frame_len, lag));
      any = true;
    }
    if (!any) continue;
    sum_r += std::clamp(r_best, 0.0, 1.0);
    ++used;
  }
  if (used == 0) throw Error(Err::NoVoicedFrames, "no analyzable frames");
  const double r_bar =
      std::clamp(sum_r / static_cast<double>(used), 0.0, 1.0 - 1e-12);
  if (r_bar <= 0.0) return -20.0;
  const double hnr = 10.0 * std::log10(r_bar / (1.0 - r_bar));
  return std::clamp(hnr, -20.0, 40.0);
}

}  // namespace phonia::pitch
