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

#include "phonia/error.hpp"
#include "phonia/features.hpp"
#include "phonia/pitch.hpp"
#include "phonia/stats.hpp"

namespace phonia {

double rpde(const Segment& seg, const RpdeConfig& cfg) {
  const auto& x = seg.samples;
  const int rate = seg.sample_rate_hz;
  if (x.size() < static_cast<std::size_t>(rate)) {
    throw Error(Err::TooShort, "rpde needs >= 1 s of signal");
  }

  // embedding delay from the dominant F0; falls back to a fixed pitch for
  // aperiodic input so the measure stays defined on noise
  double f0_mode = cfg.fallback_f0_hz;
  {
    const auto frames = pitch::track(x, rate);
    std::vector<double> f0s;
    for (const auto& f : frames) {
      if (f.voiced && f.period_samples > 0.0) {
        f0s.push_back(rate / f.period_samples);
      }
    }
    if (f0s.size() >= 5) f0_mode = stats::histogram_mode(f0s);
  }
  const auto delay = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(rate / (4.0 * f0_mode))));

  const int dim = cfg.dim;
  if (x.size() <= static_cast<std::size_t>(dim) * delay + 2) {
    throw Error(Err::TooShort, "rpde embedding exceeds signal");
  }
  const std::size_t n_embed = x.size() - static_cast<std::size_t>(dim - 1) *
                                             delay;

  // radius = factor * RMS distance of embedded points from their centroid
  std::vector<double> centroid(static_cast<std::size_t>(dim), 0.0);
  for (std::size_t t = 0; t < n_embed; ++t) {
    for (int d = 0; d < dim; ++d) {
      centroid[static_cast<std::size_t>(d)] +=
          x[t + static_cast<std::size_t>(d) * delay];
    }
  }
  for (auto& c : centroid) c /= static_cast<double>(n_embed);
  double msd = 0.0;
  for (std::size_t t = 0; t < n_embed; ++t) {
    for (int d = 0; d < dim; ++d) {
      const double dv = x[t + static_cast<std::size_t>(d) * delay] -
                        centroid[static_cast<std::size_t>(d)];
      msd += dv * dv;
    }
  }
  msd /= static_cast<double>(n_embed);
  const double eps = cfg.radius_factor * std::sqrt(msd);
  const double eps2 = eps * eps;
  if (eps2 <= 0.0) throw Error(Err::NoRecurrences, "flat signal");

  const auto t_max = static_cast<std::size_t>(
      std::ceil(1.5 * rate / cfg.f0_min_hz));
  const std::size_t stride =
      std::max<std::size_t>(1, n_embed / cfg.max_anchors);

  auto dist2 = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
      const std::size_t off = static_cast<std::size_t>(d) * delay;
      const double dv = x[a + off] - x[b + off];
      s += dv * dv;
    }
    return s;
  };

  // first-return times: leave the ball around the anchor, then re-enter
  std::vector<double> hist(t_max + 1, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < n_embed; i += stride) {
    bool left = false;
    const std::size_t limit = std::min(n_embed, i + t_max + 1);
    for (std::size_t s = i + 1; s < limit; ++s) {
      const double d2 = dist2(i, s);
      if (!left) {
        if (d2 > eps2) left = true;
      } else if (d2 <= eps2) {
        hist[s - i] += 1.0;
        total += 1.0;
        break;
      }
    }
  }
  if (total <= 0.0) throw Error(Err::NoRecurrences, "no returns found");

  for (auto& h : hist) h /= total;
  const double entropy = stats::shannon_entropy(hist);
  return std::clamp(entropy / std::log(static_cast<double>(t_max)), 0.0, 1.0);
}

DfaResult dfa_series(std::span<const double> x, const DfaConfig& cfg) {
  if (x.size() < 4096) throw Error(Err::TooShort, "dfa needs >= 4096 samples");

  // integrate the mean-removed signal
  const double m = stats::mean(x);
  std::vector<double> y(x.size());
  double acc = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    acc += x[t] - m;
    y[t] = acc;
  }

  // log-spaced box sizes
  std::vector<std::size_t> boxes;
  for (std::size_t i = 0; i < cfg.n_boxes; ++i) {
    const double f = static_cast<double>(i) /
                     static_cast<double>(cfg.n_boxes - 1);
    const auto b = static_cast<std::size_t>(std::lround(
        cfg.min_box * std::pow(static_cast<double>(cfg.max_box) /
                                   static_cast<double>(cfg.min_box),
                               f)));
    if (boxes.empty() || b > boxes.back()) boxes.push_back(b);
  }

  std::vector<double> log_n, log_f;
  for (std::size_t n : boxes) {
    const std::size_t n_seg = y.size() / n;
    if (n_seg < 2) continue;
    double ss = 0.0;
    for (std::size_t s = 0; s < n_seg; ++s) {
      // least-squares line over the box, residual sum of squares
      const std::size_t off = s * n;
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const double xv = static_cast<double>(t);
        sx += xv;
        sy += y[off + t];
        sxx += xv * xv;
        sxy += xv * y[off + t];
      }
      const double nn = static_cast<double>(n);
      const double denom = nn * sxx - sx * sx;
      const double slope = denom != 0.0 ? (nn * sxy - sx * sy) / denom : 0.0;
      const double icept = (sy - slope * sx) / nn;
      for (std::size_t t = 0; t < n; ++t) {
        const double r = y[off + t] - (icept + slope * static_cast<double>(t));
        ss += r * r;
      }
    }
    const double fluct =
        std::sqrt(ss / static_cast<double>(n_seg * n));
    if (fluct > 0.0) {
      log_n.push_back(std::log(static_cast<double>(n)));
      log_f.push_back(std::log(fluct));
    }
  }
  if (log_n.size() < 2) throw Error(Err::TooShort, "dfa scaling underdetermined");

  // least-squares slope of log F against log n
  const double mx = stats::mean(log_n);
  const double my = stats::mean(log_f);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    num += (log_n[i] - mx) * (log_f[i] - my);
    den += (log_n[i] - mx) * (log_n[i] - mx);
  }
  DfaResult r;
  r.alpha = num / den;
  r.squashed = 1.0 / (1.0 + std::exp(-r.alpha));
  return r;
}

DfaResult dfa(const Segment& seg, const DfaConfig& cfg) {
  return dfa_series(seg.samples, cfg);
}

double ppe(const CycleContour& contour, const PpeConfig& cfg) {
  if (contour.num_cycles() < 32) {
    throw Error(Err::TooFewCycles, "ppe needs >= 32 cycles");
  }
  const auto& f0 = contour.f0_hz;
  const double med = stats::median(f0);

  // semitone scale relative to the contour's own median pitch
  std::vector<double> st(f0.size());
  for (std::size_t i = 0; i < f0.size(); ++i) {
    st[i] = 12.0 * std::log2(f0[i] / med);
  }
  const double m = stats::mean(st);
  for (auto& v : st) v -= m;

  // order-2 whitening via Yule-Walker
  const std::size_t n = st.size();
  double r0 = 0.0, r1 = 0.0, r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) r0 += st[i] * st[i];
  for (std::size_t i = 0; i + 1 < n; ++i) r1 += st[i] * st[i + 1];
  for (std::size_t i = 0; i + 2 < n; ++i) r2 += st[i] * st[i + 2];
  r0 /= static_cast<double>(n);
  r1 /= static_cast<double>(n);
  r2 /= static_cast<double>(n);

  std::vector<double> resid;
  if (r0 < 1e-18) {
    resid.assign(n, 0.0);  // flat pitch: residuals collapse to one bin
  } else {
    const double det = r0 * r0 - r1 * r1;
    double a1 = 0.0, a2 = 0.0;
    if (std::abs(det) > 1e-30) {
      a1 = (r1 * r0 - r1 * r2) / det;
      a2 = (r0 * r2 - r1 * r1) / det;
    }
    resid.resize(n - 2);
    for (std::size_t i = 2; i < n; ++i) {
      resid[i - 2] = st[i] - a1 * st[i - 1] - a2 * st[i - 2];
    }
  }

  // normalized entropy of the residual histogram over +/- range semitones
  const int bins = cfg.bins;
  std::vector<double> hist(static_cast<std::size_t>(bins), 0.0);
  const double half = cfg.range_semitones;
  for (double v : resid) {
    int b = static_cast<int>((v + half) / (2.0 * half) * bins);
    b = std::clamp(b, 0, bins - 1);
    hist[static_cast<std::size_t>(b)] += 1.0;
  }
  for (auto& h : hist) h /= static_cast<double>(resid.size());
  return std::clamp(stats::shannon_entropy(hist) / std::log(bins), 0.0, 1.0);
}

double hnr_feature(const Segment& seg) {
  return pitch::hnr_db(seg.samples, seg.sample_rate_hz);
}

}  // namespace phonia
