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

#ifndef PHONIA_WAVELET_HPP_
#define PHONIA_WAVELET_HPP_

#include <array>
#include <span>
#include <vector>

namespace phonia::wavelet {

// 4-tap Daubechies analysis low-pass; the high-pass is the quadrature
// mirror g[m] = (-1)^m h[3-m]. Orthonormal, so the periodized transform
// conserves energy exactly.
std::array<double, 4> daubechies4_lowpass();

// One periodized analysis step: x (even length) -> approx + detail, each
// half length. a[i] = sum_m h[m] x[(2i+m) mod n], d likewise with g.
void dwt_step(std::span<const double> x, std::vector<double>& approx,
              std::vector<double>& detail);

struct Decomposition {
  // details[k] and approx[k] are the level-(k+1) coefficients
  std::vector<std::vector<double>> details;
  std::vector<std::vector<double>> approx;
};

// Repeated analysis of the running approximation. x.size() must be
// divisible by 2^levels.
Decomposition dwt_multilevel(std::span<const double> x, int levels);

}  // namespace phonia::wavelet

#endif  // PHONIA_WAVELET_HPP_
