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
#include <numbers>

#include "phonia/dsp.hpp"
#include "phonia/error.hpp"
#include "phonia/features.hpp"
#include "phonia/stats.hpp"

namespace phonia {

namespace {

double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

}  // namespace

std::vector<std::vector<double>> mfcc_frames(const Segment& seg,
                                             const MfccConfig& cfg) {
  const auto& x = seg.samples;
  const int rate = seg.sample_rate_hz;
  const auto win = static_cast<std::size_t>(
      std::lround(cfg.window_seconds * rate));
  const auto hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(cfg.hop_seconds * rate)));
  if (x.size() < win || win < 16) {
    throw Error(Err::TooShort, "mfcc needs at least one analysis window");
  }
  const std::size_t nfft = dsp::next_pow2(win);
  const std::size_t nbins = nfft / 2 + 1;
  const auto window = dsp::hamming(win);

  // triangular mel bank, equally spaced centers in mel between 0 and rate/2
  const int nfilt = cfg.n_filters;
  const double mel_max = hz_to_mel(rate / 2.0);
  std::vector<double> edges(static_cast<std::size_t>(nfilt) + 2);
  for (int m = 0; m < nfilt + 2; ++m) {
    edges[static_cast<std::size_t>(m)] =
        mel_to_hz(mel_max * m / (nfilt + 1));
  }
  const double hz_per_bin = static_cast<double>(rate) /
                            static_cast<double>(nfft);
  std::vector<std::vector<double>> bank(
      static_cast<std::size_t>(nfilt), std::vector<double>(nbins, 0.0));
  for (int m = 0; m < nfilt; ++m) {
    const double lo = edges[static_cast<std::size_t>(m)];
    const double mid = edges[static_cast<std::size_t>(m) + 1];
    const double hi = edges[static_cast<std::size_t>(m) + 2];
    for (std::size_t k = 0; k < nbins; ++k) {
      const double f = static_cast<double>(k) * hz_per_bin;
      double w = 0.0;
      if (f >= lo && f <= mid && mid > lo) {
        w = (f - lo) / (mid - lo);
      } else if (f > mid && f <= hi && hi > mid) {
        w = (hi - f) / (hi - mid);
      }
      bank[static_cast<std::size_t>(m)][k] = w;
    }
  }

  const int ncoef = cfg.n_coeffs;
  std::vector<std::vector<double>> frames;
  std::vector<dsp::cplx> buf(nfft);
  for (std::size_t start = 0; start + win <= x.size(); start += hop) {
    std::fill(buf.begin(), buf.end(), dsp::cplx(0.0, 0.0));
    for (std::size_t t = 0; t < win; ++t) {
      buf[t] = dsp::cplx(x[start + t] * window[t], 0.0);
    }
    dsp::fft(buf, false);

    std::vector<double> loge(static_cast<std::size_t>(nfilt));
    for (int m = 0; m < nfilt; ++m) {
      double e = 0.0;
      for (std::size_t k = 0; k < nbins; ++k) {
        e += bank[static_cast<std::size_t>(m)][k] * std::norm(buf[k]);
      }
      loge[static_cast<std::size_t>(m)] = std::log(std::max(e, 1e-300));
    }

    // DCT-II; the constant term is dropped, coefficient j=1..ncoef kept
    std::vector<double> c(static_cast<std::size_t>(ncoef), 0.0);
    for (int j = 1; j <= ncoef; ++j) {
      double acc = 0.0;
      for (int m = 0; m < nfilt; ++m) {
        acc += loge[static_cast<std::size_t>(m)] *
               std::cos(std::numbers::pi * j * (m + 0.5) / nfilt);
      }
      c[static_cast<std::size_t>(j - 1)] = acc;
    }
    frames.push_back(std::move(c));
  }
  if (frames.size() < 2) {
    throw Error(Err::TooShort, "mfcc needs at least two frames");
  }
  return frames;
}

NamedValues mfcc_summaries(const Segment& seg, const MfccConfig& cfg) {
  const auto frames = mfcc_frames(seg, cfg);
  const std::size_t ncoef = frames[0].size();
  NamedValues out;
  std::vector<double> series(frames.size());
  std::vector<double> med(ncoef), mu(ncoef), sd(ncoef), mudiff(ncoef);
  for (std::size_t k = 0; k < ncoef; ++k) {
    for (std::size_t f = 0; f < frames.size(); ++f) series[f] = frames[f][k];
    med[k] = stats::median(series);
    mu[k] = stats::mean(series);
    sd[k] = stats::sd(series);
    double d = 0.0;
    for (std::size_t f = 1; f < frames.size(); ++f) {
      d += std::abs(series[f] - series[f - 1]);
    }
    mudiff[k] = d / static_cast<double>(frames.size() - 1);
  }
  for (std::size_t k = 0; k < ncoef; ++k) {
    out.emplace_back("medMFCC" + std::to_string(k + 1), med[k]);
  }
  for (std::size_t k = 0; k < ncoef; ++k) {
    out.emplace_back("muMFCC" + std::to_string(k + 1), mu[k]);
  }
  for (std::size_t k = 0; k < ncoef; ++k) {
    out.emplace_back("sdMFCC" + std::to_string(k + 1), sd[k]);
  }
  for (std::size_t k = 0; k < ncoef; ++k) {
    out.emplace_back("muDiffMFCC" + std::to_string(k + 1), mudiff[k]);
  }
  return out;
}

}  // namespace phonia
