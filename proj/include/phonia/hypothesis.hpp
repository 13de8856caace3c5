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

#ifndef PHONIA_HYPOTHESIS_HPP_
#define PHONIA_HYPOTHESIS_HPP_

#include <span>

namespace phonia {

enum class TestKind { KS2, MWU, TTEST };

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  TestKind test = TestKind::KS2;
};

// Two-sided two-sample Kolmogorov-Smirnov: statistic is sup|ECDF_a-ECDF_b|,
// p from the asymptotic Kolmogorov distribution with the usual
// effective-n small-sample correction. Needs >= 5 samples per side.
TestResult ks_test_2sample(std::span<const double> a,
                           std::span<const double> b);

// Mann-Whitney U (statistic is U for the first sample). Exact two-sided p
// by enumeration for tie-free inputs with both sides <= 12; otherwise the
// tie-corrected normal approximation with continuity correction.
TestResult mann_whitney_u(std::span<const double> a, std::span<const double> b);

// Welch's unequal-variance t-test, two-sided.
TestResult t_test_unpaired(std::span<const double> a,
                           std::span<const double> b);

// Regularized incomplete beta I_x(a, b); exposed for the t distribution.
double incomplete_beta(double a, double b, double x);

}  // namespace phonia

#endif  // PHONIA_HYPOTHESIS_HPP_
