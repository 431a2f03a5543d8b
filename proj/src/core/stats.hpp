// Copyright 2026 The wavestat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace wavestat::stats {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double residual_sum_squares = 0.0;
  std::size_t points = 0;

  /// Two-sided confidence interval for the slope with Student-t quantile.
  std::pair<double, double> slope_interval(double confidence = 0.95) const;
};

/// Ordinary least squares y = intercept + slope x. Needs >= 2 points.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Two-sided Student-t quantile for the given confidence and degrees of
/// freedom (dof >= 1).
double student_t_quantile(double confidence, int dof);

/// One-sample Kolmogorov-Smirnov distance between the empirical CDF of
/// `sorted` (ascending) and `cdf`.
double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance; inputs ascending.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic critical value for α = 0.01: 1.63 / sqrt(n).
double ks_threshold_001(std::int64_t n);

/// Two-sample critical value for α = 0.01: 1.63 sqrt((n + m) / (n m)).
double ks_two_sample_threshold_001(std::int64_t n, std::int64_t m);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

/// Wilson score interval for a binomial proportion k / n.
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z);

/// z for a two-sided 99% interval.
inline constexpr double kZ99 = 2.5758293035489004;

/// Sample median of ascending data (mean of the two middle values for even n).
double median_sorted(std::span<const double> sorted);

/// Distribution-free confidence interval for the median from order
/// statistics (normal approximation to Binomial(n, 1/2)).
Interval median_interval_sorted(std::span<const double> sorted, double z = kZ99);

struct MeanEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Mean and standard error from the unbiased sample variance, summed in
/// index order with compensation.
MeanEstimate mean_and_stderr(std::span<const double> values);

}  // namespace wavestat::stats
