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

#include "stats.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "error.hpp"
#include "numeric.hpp"

namespace wavestat::stats {

double student_t_quantile(double confidence, int dof) {
  if (dof < 1 || !(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "student t quantile needs dof >= 1 and 0 < c < 1");
  }
  const boost::math::students_t dist(static_cast<double>(dof));
  return boost::math::quantile(dist, 0.5 + 0.5 * confidence);
}

std::pair<double, double> LinearFit::slope_interval(double confidence) const {
  if (points < 3) return {slope, slope};
  const double t = student_t_quantile(confidence, static_cast<int>(points) - 2);
  return {slope - t * slope_stderr, slope + t * slope_stderr};
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "line fit needs >= 2 paired points");
  }
  const auto n = static_cast<double>(x.size());
  const double mx = compensated_sum(x) / n;
  const double my = compensated_sum(y) / n;
  CompensatedSum sxx;
  CompensatedSum sxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx.add((x[i] - mx) * (x[i] - mx));
    sxy.add((x[i] - mx) * (y[i] - my));
  }
  if (!(sxx.value() > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "line fit needs at least two distinct x values");
  }
  LinearFit fit;
  fit.points = x.size();
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  CompensatedSum rss;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    rss.add(r * r);
  }
  fit.residual_sum_squares = rss.value();
  if (x.size() > 2) {
    fit.slope_stderr = std::sqrt(fit.residual_sum_squares / (n - 2.0) / sxx.value());
  }
  return fit;
}

double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf) {
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n));
  }
  return d;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  std::size_t i = 0;
  std::size_t j = 0;
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_threshold_001(std::int64_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

double ks_two_sample_threshold_001(std::int64_t n, std::int64_t m) {
  const auto dn = static_cast<double>(n);
  const auto dm = static_cast<double>(m);
  return 1.63 * std::sqrt((dn + dm) / (dn * dm));
}

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const auto n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double median_sorted(std::span<const double> sorted) {
  if (sorted.empty()) throw Error(ErrorCode::kInvalidArgument, "median of empty sample");
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

Interval median_interval_sorted(std::span<const double> sorted, double z) {
  if (sorted.empty()) throw Error(ErrorCode::kInvalidArgument, "median of empty sample");
  const auto n = static_cast<double>(sorted.size());
  const double half_width = z * std::sqrt(n) / 2.0;
  const auto lo = static_cast<std::int64_t>(std::floor(n / 2.0 - half_width));
  const auto hi = static_cast<std::int64_t>(std::ceil(n / 2.0 + half_width));
  const auto last = static_cast<std::int64_t>(sorted.size()) - 1;
  return {sorted[static_cast<std::size_t>(std::clamp<std::int64_t>(lo, 0, last))],
          sorted[static_cast<std::size_t>(std::clamp<std::int64_t>(hi, 0, last))]};
}

MeanEstimate mean_and_stderr(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "mean of empty sample");
  const auto n = static_cast<double>(values.size());
  const double mean = compensated_sum(values) / n;
  CompensatedSum ss;
  for (double v : values) ss.add((v - mean) * (v - mean));
  MeanEstimate est;
  est.mean = mean;
  est.standard_error = values.size() > 1 ? std::sqrt(ss.value() / (n - 1.0) / n) : 0.0;
  return est;
}

}  // namespace wavestat::stats
