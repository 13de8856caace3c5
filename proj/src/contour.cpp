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

#include "phonia/contour.hpp"

#include <algorithm>
#include <cmath>

#include "phonia/dsp.hpp"
#include "phonia/error.hpp"
#include "phonia/pitch.hpp"

namespace phonia {

std::vector<double> CycleContour::periods_seconds() const {
  std::vector<double> p(f0_hz.size());
  for (std::size_t i = 0; i < f0_hz.size(); ++i) {
    p[i] = (cycle_starts[i + 1] - cycle_starts[i]) / sample_rate_hz;
  }
  return p;
}

std::vector<double> tkeo(std::span<const double> x) {
  if (x.size() < 3) throw Error(Err::TooShort, "tkeo needs >= 3 samples");
  std::vector<double> y(x.size() - 2);
  for (std::size_t n = 1; n + 1 < x.size(); ++n) {
    y[n - 1] = x[n] * x[n] - x[n - 1] * x[n + 1];
  }
  return y;
}

namespace {

// Integer argmax of s*x over [lo, hi), refined to a fractional position by
// a parabola through the neighbouring samples. Returns the position and
// writes the (positive) refined peak value.
double refined_peak(std::span<const double> x, double polarity,
                    std::size_t lo, std::size_t hi, double* peak_value) {
  lo = std::min(lo, x.size() - 1);
  hi = std::min(hi, x.size());
  if (hi <= lo) hi = lo + 1;
  std::size_t k = lo;
  double best = polarity * x[lo];
  for (std::size_t t = lo + 1; t < hi; ++t) {
    const double v = polarity * x[t];
    if (v > best) {
      best = v;
      k = t;
    }
  }
  double pos = static_cast<double>(k);
  double val = best;
  if (k > 0 && k + 1 < x.size()) {
    const double d = dsp::parabolic_peak(polarity * x[k - 1], best,
                                         polarity * x[k + 1], &val);
    pos += d;
  }
  if (peak_value) *peak_value = std::max(val, 0.0);
  return pos;
}

// Next cycle mark: among strong local maxima of s*x inside the window,
// take the one closest to the expected position. The window-global max can
// belong to the wrong pulse when amplitudes vary, so proximity decides
// between qualifying peaks.
double next_mark(std::span<const double> x, double polarity, std::size_t lo,
                 std::size_t hi, double expected) {
  lo = std::max<std::size_t>(lo, 1);
  hi = std::min(hi, x.size() - 1);
  if (hi <= lo + 1) {
    return refined_peak(x, polarity, lo, hi + 1, nullptr);
  }
  std::vector<std::pair<std::size_t, double>> peaks;
  double vmax = -1e300;
  for (std::size_t t = lo; t < hi; ++t) {
    const double v = polarity * x[t];
    vmax = std::max(vmax, v);
    if (v >= polarity * x[t - 1] && v > polarity * x[t + 1]) {
      peaks.emplace_back(t, v);
    }
  }
  std::size_t k = 0;
  bool found = false;
  double best_dist = 1e300;
  for (const auto& [t, v] : peaks) {
    if (v < 0.5 * vmax) continue;
    const double dist = std::abs(static_cast<double>(t) - expected);
    if (dist < best_dist) {
      best_dist = dist;
      k = t;
      found = true;
    }
  }
  if (!found) {
    return refined_peak(x, polarity, lo, hi + 1, nullptr);
  }
  double pos = static_cast<double>(k);
  const double d = dsp::parabolic_peak(polarity * x[k - 1], polarity * x[k],
                                       polarity * x[k + 1], nullptr);
  return pos + d;
}

}  // namespace

std::vector<double> cycle_peak_amplitudes(std::span<const double> x,
                                          std::span<const double> marks) {
  if (marks.size() < 2) return {};
  std::vector<double> amps(marks.size() - 1, 0.0);
  for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
    const auto lo = static_cast<std::size_t>(
        std::ceil(std::max(marks[i], 0.0)));
    const auto hi = std::min(
        x.size(), static_cast<std::size_t>(
                      std::max(std::ceil(marks[i + 1]),
                               static_cast<double>(lo + 1))));
    if (lo >= x.size()) break;
    std::size_t k = lo;
    double best = std::abs(x[lo]);
    for (std::size_t t = lo + 1; t < hi; ++t) {
      if (std::abs(x[t]) > best) {
        best = std::abs(x[t]);
        k = t;
      }
    }
    double peak = best;
    const double sgn = x[k] >= 0.0 ? 1.0 : -1.0;
    if (k > 0 && k + 1 < x.size()) {
      dsp::parabolic_peak(sgn * x[k - 1], best, sgn * x[k + 1], &peak);
    }
    amps[i] = std::max(peak, 0.0);
  }
  return amps;
}

CycleContour detect_cycles(const Segment& seg, const PitchConfig& cfg) {
  if (cfg.f0_min_hz >= cfg.f0_max_hz) {
    throw Error(Err::InvalidParams, "f0_min must be below f0_max");
  }
  const auto& x = seg.samples;
  const int rate = seg.sample_rate_hz;

  pitch::TrackConfig tc;
  tc.f0_min_hz = cfg.f0_min_hz;
  tc.f0_max_hz = cfg.f0_max_hz;
  tc.frame_seconds = cfg.frame_seconds;
  tc.voicing_threshold = cfg.voicing_threshold;
  const auto frames = pitch::track(x, rate, tc);
  if (frames.empty()) throw Error(Err::NoVoicedCycles, seg.recording_id);

  // longest voiced frame run; sustained phonation has essentially one
  std::size_t best_begin = 0, best_len = 0, run_begin = 0, run_len = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].voiced) {
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
  if (best_len == 0) throw Error(Err::NoVoicedCycles, seg.recording_id);

  const auto hop = static_cast<std::size_t>(std::lround(tc.hop_seconds * rate));
  const std::size_t run_start = frames[best_begin].start;
  const std::size_t run_end =
      std::min(x.size(), frames[best_begin + best_len - 1].start +
                             static_cast<std::size_t>(std::lround(
                                 tc.frame_seconds * rate)));

  // period lookup by position, from the covering voiced frame
  auto period_at = [&](double pos) {
    const double rel =
        (pos - static_cast<double>(frames[best_begin].start)) /
        static_cast<double>(hop);
    std::size_t idx =
        best_begin +
        static_cast<std::size_t>(std::clamp(
            rel, 0.0, static_cast<double>(best_len > 0 ? best_len - 1 : 0)));
    idx = std::min(idx, best_begin + best_len - 1);
    return frames[idx].period_samples;
  };

  // polarity from the strongest sample of the run
  double polarity = 1.0;
  {
    double best_abs = 0.0;
    for (std::size_t t = run_start; t < run_end; ++t) {
      if (std::abs(x[t]) > best_abs) {
        best_abs = std::abs(x[t]);
        polarity = x[t] >= 0.0 ? 1.0 : -1.0;
      }
    }
  }

  // walk peak to peak through the run
  std::vector<double> marks;
  {
    const double t0 = period_at(static_cast<double>(run_start));
    if (t0 <= 0.0) throw Error(Err::NoVoicedCycles, seg.recording_id);
    double m = refined_peak(
        x, polarity, run_start,
        run_start + static_cast<std::size_t>(std::ceil(t0)), nullptr);
    marks.push_back(m);
    while (true) {
      const double period = period_at(m);
      if (period <= 0.0) break;
      const double expected = m + period;
      const double w = cfg.search_width * period;
      if (expected + w + 2.0 >= static_cast<double>(run_end)) break;
      const auto lo = static_cast<std::size_t>(std::max(
          expected - w, m + 0.5 * period));
      const auto hi = static_cast<std::size_t>(expected + w) + 1;
      const double next = next_mark(x, polarity, lo, hi, expected);
      if (next <= m + 1.0) break;
      marks.push_back(next);
      m = next;
    }
  }

  // keep the longest stretch of consecutive in-band cycles
  const double p_min = rate / cfg.f0_max_hz;
  const double p_max = rate / cfg.f0_min_hz;
  std::size_t seg_begin = 0, seg_len = 0;  // in cycles
  {
    std::size_t cur_begin = 0, cur_len = 0;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
      const double p = marks[i + 1] - marks[i];
      if (p >= p_min && p <= p_max) {
        if (cur_len == 0) cur_begin = i;
        ++cur_len;
        if (cur_len > seg_len) {
          seg_len = cur_len;
          seg_begin = cur_begin;
        }
      } else {
        cur_len = 0;
      }
    }
  }
  if (seg_len < 10) throw Error(Err::NoVoicedCycles, seg.recording_id);

  CycleContour c;
  c.sample_rate_hz = rate;
  c.cycle_starts.assign(marks.begin() + static_cast<std::ptrdiff_t>(seg_begin),
                        marks.begin() +
                            static_cast<std::ptrdiff_t>(seg_begin + seg_len +
                                                        1));
  c.f0_hz.resize(seg_len);
  for (std::size_t i = 0; i < seg_len; ++i) {
    c.f0_hz[i] = rate / (c.cycle_starts[i + 1] - c.cycle_starts[i]);
  }
  c.a0 = cycle_peak_amplitudes(x, c.cycle_starts);
  return c;
}

}  // namespace phonia
