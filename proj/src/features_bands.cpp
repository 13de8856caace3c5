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

#include "phonia/contour.hpp"
#include "phonia/dsp.hpp"
#include "phonia/error.hpp"
#include "phonia/features.hpp"
#include "phonia/stats.hpp"

namespace phonia {

namespace {

// FFT low-pass decimation by a power-of-two factor. Returns the decimated
// signal; aliasing-free because the spectrum is zeroed above the new
// Nyquist before resampling.
std::vector<double> decimate_pow2(std::span<const double> x, int rate,
                                  int decim) {
  if (decim <= 1) return {x.begin(), x.end()};
  const std::size_t nfft = dsp::next_pow2(x.size());
  std::vector<dsp::cplx> buf(nfft, dsp::cplx(0.0, 0.0));
  for (std::size_t i = 0; i < x.size(); ++i) buf[i] = dsp::cplx(x[i], 0.0);
  dsp::fft(buf, false);
  const double cutoff = rate / (2.0 * decim);
  const double hz_per_bin = static_cast<double>(rate) / nfft;
  for (std::size_t k = 1; k <= nfft / 2; ++k) {
    if (static_cast<double>(k) * hz_per_bin >= cutoff) {
      buf[k] = dsp::cplx(0.0, 0.0);
      buf[nfft - k] = dsp::cplx(0.0, 0.0);
    }
  }
  dsp::fft(buf, true);
  std::vector<double> out;
  out.reserve(x.size() / static_cast<std::size_t>(decim) + 1);
  for (std::size_t i = 0; i < x.size(); i += static_cast<std::size_t>(decim)) {
    out.push_back(buf[i].real());
  }
  return out;
}

// moving-average smoothing
std::vector<double> boxcar(std::span<const double> x, std::size_t w) {
  std::vector<double> out(x.size(), 0.0);
  if (x.empty()) return out;
  const std::size_t half = w / 2;
  double acc = 0.0;
  std::size_t lo = 0, hi = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t want_lo = i >= half ? i - half : 0;
    const std::size_t want_hi = std::min(x.size(), i + half + 1);
    while (hi < want_hi) acc += x[hi++];
    while (lo < want_lo) acc -= x[lo++];
    out[i] = acc / static_cast<double>(hi - lo);
  }
  return out;
}

double pearson(std::span<const double> a, std::span<const double> b,
               bool* degenerate) {
  const double ma = stats::mean(a);
  const double mb = stats::mean(b);
  double num = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    num += da * db;
    va += da * da;
    vb += db * db;
  }
  const double scale_a = std::abs(ma) + 1e-12;
  const double scale_b = std::abs(mb) + 1e-12;
  if (std::sqrt(va / a.size()) < 1e-6 * scale_a ||
      std::sqrt(vb / b.size()) < 1e-6 * scale_b) {
    *degenerate = true;
    return 0.0;
  }
  *degenerate = false;
  return num / std::sqrt(va * vb);
}

struct PairStats {
  double max = 0.0, mean = 0.0, sd = 0.0;
};

PairStats correlate_pairs(const std::vector<std::vector<double>>& env,
                          const std::vector<double>& starts,
                          double min_separation) {
  std::vector<double> cors;
  for (std::size_t i = 0; i < env.size(); ++i) {
    for (std::size_t j = i + 1; j < env.size(); ++j) {
      if (starts[j] - starts[i] < min_separation) continue;
      bool degenerate = false;
      const double c = pearson(env[i], env[j], &degenerate);
      if (degenerate) continue;
      cors.push_back(std::clamp(c, 0.0, 1.0));
    }
  }
  PairStats s;
  if (cors.empty()) return s;
  s.max = stats::max_value(cors);
  s.mean = stats::mean(cors);
  s.sd = cors.size() > 1 ? stats::sd(cors) : 0.0;
  return s;
}

}  // namespace

NamedValues gne(const Segment& seg, const BandConfig& cfg) {
  const int rate = seg.sample_rate_hz;
  if (rate < 6000) {
    throw Error(Err::InsufficientBandwidth, "gne needs >= 6 kHz sampling");
  }

  // work near 10-11 kHz; the band set tops out at 4.5 kHz anyway
  int decim = 1;
  while (rate / (2 * decim) >= 10000) decim *= 2;
  const auto x = decimate_pow2(seg.samples, rate, decim);
  const double dec_rate = static_cast<double>(rate) / decim;

  const double band_limit = std::min(cfg.top_hz, 0.45 * dec_rate);
  std::vector<double> starts;
  for (double s = 0.0; s + cfg.bandwidth_hz <= band_limit + 1e-9;
       s += cfg.hop_hz) {
    starts.push_back(s);
  }
  if (starts.size() < 8) {
    throw Error(Err::InsufficientBandwidth, "too few analysis bands");
  }

  // one spectrum, per-band masked inverse transforms
  const std::size_t nfft = dsp::next_pow2(x.size());
  std::vector<dsp::cplx> spec(nfft, dsp::cplx(0.0, 0.0));
  for (std::size_t i = 0; i < x.size(); ++i) spec[i] = dsp::cplx(x[i], 0.0);
  dsp::fft(spec, false);
  const double hz_per_bin = dec_rate / static_cast<double>(nfft);

  const auto trim = static_cast<std::size_t>(0.005 * dec_rate);
  if (x.size() <= 4 * trim + 16) {
    throw Error(Err::TooShort, "gne segment too short");
  }
  const std::size_t env_len = x.size() - 2 * trim;
  const auto smooth_w =
      std::max<std::size_t>(3, static_cast<std::size_t>(0.003 * dec_rate));

  std::vector<std::vector<double>> env_hilbert, env_seo, env_tkeo;
  std::vector<dsp::cplx> band(nfft);
  for (double s : starts) {
    std::fill(band.begin(), band.end(), dsp::cplx(0.0, 0.0));
    for (std::size_t k = 1; k < nfft / 2; ++k) {
      const double f = static_cast<double>(k) * hz_per_bin;
      if (f >= s && f <= s + cfg.bandwidth_hz) band[k] = 2.0 * spec[k];
    }
    dsp::fft(band, true);

    std::vector<double> hil(env_len), real_band(env_len + 2);
    for (std::size_t t = 0; t < env_len; ++t) {
      hil[t] = std::abs(band[trim + t]);
    }
    for (std::size_t t = 0; t < env_len + 2 && trim + t < x.size(); ++t) {
      real_band[t] = band[trim + t].real() * 0.5;  // undo analytic doubling
    }
    std::vector<double> seo(env_len);
    for (std::size_t t = 0; t < env_len; ++t) {
      seo[t] = real_band[t] * real_band[t];
    }
    const auto tk = tkeo(real_band);

    env_hilbert.push_back(std::move(hil));
    env_seo.push_back(boxcar(seo, smooth_w));
    env_tkeo.push_back(boxcar({tk.data(), std::min(tk.size(), env_len)},
                              smooth_w));
  }

  const PairStats h = correlate_pairs(env_hilbert, starts, cfg.bandwidth_hz);
  const PairStats e = correlate_pairs(env_seo, starts, cfg.bandwidth_hz);
  const PairStats t = correlate_pairs(env_tkeo, starts, cfg.bandwidth_hz);

  return {
      {"GNE", h.max},           {"GNE_mean", h.mean},
      {"GNE_std", h.sd},        {"GNE-SEO", e.max},
      {"GNE-SEO_mean", e.mean}, {"GNE-SEO_std", e.sd},
      {"GNE-TKEO", t.max},      {"GNE-TKEO_mean", t.mean},
      {"GNE-TKEO_std", t.sd},
  };
}

NamedValues vfer(const Segment& seg) {
  const int rate = seg.sample_rate_hz;
  if (rate < 16000) {
    throw Error(Err::InsufficientBandwidth, "vfer needs >= 16 kHz sampling");
  }
  constexpr double kSplitHz = 2500.0;

  std::size_t nfft = 0;
  const auto p = dsp::power_spectrum(seg.samples, &nfft);
  const double hz_per_bin = static_cast<double>(rate) / nfft;
  const auto split_bin = static_cast<std::size_t>(kSplitHz / hz_per_bin);

  double e_lo = 0.0, e_hi = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    (k <= split_bin ? e_lo : e_hi) += p[k];
  }
  const double e_total = e_lo + e_hi;
  if (e_total < 1e-300) throw Error(Err::TooShort, "silent segment");

  // normalized spectral entropies per band
  auto band_entropy = [&](std::size_t lo, std::size_t hi) {
    double sum = 0.0;
    for (std::size_t k = lo; k < hi; ++k) sum += p[k];
    if (sum < 1e-300 || hi - lo < 2) return 0.0;
    double h = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
      const double q = p[k] / sum;
      if (q > 0.0) h -= q * std::log(q);
    }
    return h / std::log(static_cast<double>(hi - lo));
  };

  // Teager-Kaiser energy shares of the band-limited signals
  const auto low_sig =
      dsp::analytic_band(seg.samples, rate, 0.0, kSplitHz);
  const auto high_sig =
      dsp::analytic_band(seg.samples, rate, kSplitHz, rate / 2.0);
  std::vector<double> lo_real(seg.samples.size()), hi_real(seg.samples.size());
  for (std::size_t i = 0; i < seg.samples.size(); ++i) {
    lo_real[i] = low_sig[i].real() * 0.5;
    hi_real[i] = high_sig[i].real() * 0.5;
  }
  const auto tk_lo = tkeo(lo_real);
  const auto tk_hi = tkeo(hi_real);
  const double psi_lo = std::max(stats::mean(tk_lo), 0.0);
  const double psi_hi = std::max(stats::mean(tk_hi), 0.0);
  const double psi_total = psi_lo + psi_hi;

  return {
      {"VFER-LF", e_lo / e_total},
      {"VFER-HF", e_hi / e_total},
      {"VFER-LF-TKEO", psi_total > 0.0 ? psi_lo / psi_total : 0.0},
      {"VFER-HF-TKEO", psi_total > 0.0 ? psi_hi / psi_total : 0.0},
      {"VFER-LF-entropy", band_entropy(0, split_bin + 1)},
      {"VFER-HF-entropy", band_entropy(split_bin + 1, p.size())},
  };
}

}  // namespace phonia
