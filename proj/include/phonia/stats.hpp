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

#ifndef PHONIA_STATS_HPP_
#define PHONIA_STATS_HPP_

#include <span>
#include <vector>

namespace phonia::stats {

double mean(std::span<const double> x);
// n-1 denominator
double sd(std::span<const double> x);
double median(std::span<const double> x);

// Linear-interpolation quantile (type 7): h = (n-1)p, interpolate between
// floor(h) and ceil(h). p in [0, 1].
double quantile(std::span<const double> x, double p);

// Adjusted Fisher-Pearson skewness G1; 0 for (near-)constant input.
double skewness(std::span<const double> x);
// Plain kurtosis m4/m2^2 (not excess); 0 for (near-)constant input.
double kurtosis(std::span<const double> x);

// Center of the most populated of 100 equal-width bins over [min, max];
// ties resolve to the lowest bin. Constant input returns that constant.
double histogram_mode(std::span<const double> x, int bins = 100);

double min_value(std::span<const double> x);
double max_value(std::span<const double> x);

// The fixed 13-statistic block reused across series: mean, median, SD,
// skewness, kurtosis, IQR, Q1, Q3, 5th/95th percentile, mode, min, max.
struct Descriptive {
  double mean, median, sd, skewness, kurtosis, iqr, q1, q3, p5, p95, mode,
      min, max;
};
Descriptive describe(std::span<const double> x);

// Shannon entropy -sum p ln p of a probability vector (zeros skipped).
double shannon_entropy(std::span<const double> p);

}  // namespace phonia::stats

#endif  // PHONIA_STATS_HPP_
