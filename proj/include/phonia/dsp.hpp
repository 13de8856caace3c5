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

#ifndef PHONIA_DSP_HPP_
#define PHONIA_DSP_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace phonia::dsp {

using cplx = std::complex<double>;

std::size_t next_pow2(std::size_t n);

// In-place radix-2 FFT; a.size() must be a power of two.
// inverse=true applies the 1/N scaling.
void fft(std::vector<cplx>& a, bool inverse);

// One-sided power spectrum of x zero-padded to the next power of two.
// Element k is |X_k|^2 at frequency k * rate / nfft, k = 0 .. nfft/2.
std::vector<double> power_spectrum(std::span<const double> x,
                                   std::size_t* nfft_out = nullptr);

// Complex analytic signal of the band [f_lo, f_hi] of x (Hz).
// Computed in the frequency domain on the zero-padded signal and truncated
// back to x.size(); the magnitude is the band's Hilbert envelope.
std::vector<cplx> analytic_band(std::span<const double> x, double rate_hz,
                                double f_lo, double f_hi);

std::vector<double> hamming(std::size_t n);

// Vertex offset of the parabola through (-1,ym), (0,y0), (+1,yp).
// Returns offset in [-1, 1] (clamped) and writes the peak value if asked.
double parabolic_peak(double ym, double y0, double yp,
                      double* value = nullptr);

// Linear interpolation of x at fractional index t (clamped to range).
double lerp_at(std::span<const double> x, double t);

// Resample x to m points uniformly spanning [0, x.size()-1].
std::vector<double> resample_linear(std::span<const double> x, std::size_t m);

// Normalized cross-correlation of x[i..i+w) with x[i+lag..i+lag+w).
// Caller guarantees i + lag + w <= x.size(). Returns a value in [-1, 1].
double norm_xcorr(std::span<const double> x, std::size_t i, std::size_t w,
                  std::size_t lag);

// Autocorrelation r[lag]/r[0] of one frame via FFT, lags 0..max_lag.
std::vector<double> autocorr_normalized(std::span<const double> frame,
                                        std::size_t max_lag);

}  // namespace phonia::dsp

#endif  // PHONIA_DSP_HPP_
