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

#include "phonia/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace phonia::dsp {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void fft(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n < 2) return;
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang =
        2.0 * std::numbers::pi / static_cast<double>(len) * (inverse ? 1 : -1);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        cplx u = a[i + k];
        cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& z : a) z *= inv_n;
  }
}

std::vector<double> power_spectrum(std::span<const double> x,
                                   std::size_t* nfft_out) {
  const std::size_t nfft = next_pow2(std::max<std::size_t>(x.size(), 2));
  std::vector<cplx> buf(nfft, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < x.size(); ++i) buf[i] = cplx(x[i], 0.0);
  fft(buf, false);
  std::vector<double> p(nfft / 2 + 1);
  for (std::size_t k = 0; k <= nfft / 2; ++k) p[k] = std::norm(buf[k]);
  if (nfft_out) *nfft_out = nfft;
  return p;
}

std::vector<cplx> analytic_band(std::span<const double> x, double rate_hz,
                                double f_lo, double f_hi) {
  const std::size_t nfft = next_pow2(std::max<std::size_t>(x.size(), 2));
  std::vector<cplx> buf(nfft, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < x.size(); ++i) buf[i] = cplx(x[i], 0.0);
  fft(buf, false);
  const double hz_per_bin = rate_hz / static_cast<double>(nfft);
  std::vector<cplx> band(nfft, cplx(0.0, 0.0));
  // keep positive frequencies inside the band, doubled (analytic signal)
  for (std::size_t k = 1; k < nfft / 2; ++k) {
    const double f = static_cast<double>(k) * hz_per_bin;
    if (f >= f_lo && f <= f_hi) band[k] = 2.0 * buf[k];
  }
  {
    const double f_nyq = rate_hz / 2.0;
    if (f_nyq >= f_lo && f_nyq <= f_hi) band[nfft / 2] = buf[nfft / 2];
  }
  fft(band, true);
  band.resize(x.size());
  return band;
}

std::vector<double> hamming(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi *
                                  static_cast<double>(i) /
                                  static_cast<double>(n - 1));
  }
  return w;
}

double parabolic_peak(double ym, double y0, double yp, double* value) {
  const double denom = ym - 2.0 * y0 + yp;
  double d = 0.0;
  if (std::abs(denom) > 1e-30) d = 0.5 * (ym - yp) / denom;
  d = std::clamp(d, -1.0, 1.0);
  if (value) *value = y0 - 0.25 * (ym - yp) * d;
  return d;
}

double lerp_at(std::span<const double> x, double t) {
  if (x.empty()) return 0.0;
  if (t <= 0.0) return x.front();
  const double tmax = static_cast<double>(x.size() - 1);
  if (t >= tmax) return x.back();
  const std::size_t i = static_cast<std::size_t>(t);
  const double frac = t - static_cast<double>(i);
  return x[i] + frac * (x[i + 1] - x[i]);
}

std::vector<double> resample_linear(std::span<const double> x, std::size_t m) {
  std::vector<double> out(m, 0.0);
  if (x.empty() || m == 0) return out;
  if (m == 1) {
    out[0] = x[0];
    return out;
  }
  const double step =
      static_cast<double>(x.size() - 1) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = lerp_at(x, step * static_cast<double>(i));
  }
  return out;
}

double norm_xcorr(std::span<const double> x, std::size_t i, std::size_t w,
                  std::size_t lag) {
  double num = 0.0, e0 = 0.0, e1 = 0.0;
  for (std::size_t t = 0; t < w; ++t) {
    const double a = x[i + t];
    const double b = x[i + t + lag];
    num += a * b;
    e0 += a * a;
    e1 += b * b;
  }
  const double denom = std::sqrt(e0 * e1);
  if (denom < 1e-300) return 0.0;
  return std::clamp(num / denom, -1.0, 1.0);
}

std::vector<double> autocorr_normalized(std::span<const double> frame,
                                        std::size_t max_lag) {
  const std::size_t n = frame.size();
  const std::size_t nfft = next_pow2(n + max_lag + 1);
  std::vector<cplx> buf(nfft, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) buf[i] = cplx(frame[i], 0.0);
  fft(buf, false);
  for (auto& z : buf) z = cplx(std::norm(z), 0.0);
  fft(buf, true);
  const double r0 = buf[0].real();
  std::vector<double> r(max_lag + 1, 0.0);
  if (r0 < 1e-300) return r;
  // biased (tapered) estimate: the triangular lag window damps long lags,
  // which keeps period-multiple peaks below the fundamental when scoring
  // candidates; exact values come from norm_xcorr afterwards
  for (std::size_t lag = 0; lag <= max_lag && lag < n; ++lag) {
    r[lag] = std::clamp(buf[lag].real() / r0, -1.0, 1.0);
  }
  return r;
}

}  // namespace phonia::dsp
