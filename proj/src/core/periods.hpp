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

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "curves.hpp"
#include "spectral.hpp"

namespace wavestat::periods {

/// b_{S,h}: the period of every cluster mode over S, in cluster order.
struct PeriodVector {
  std::vector<std::complex<double>> components;
  /// N(S)_h = |b|^2, summed in sorted order with compensation.
  double squared_norm = 0.0;

  std::size_t size() const noexcept { return components.size(); }
};

enum class PeriodMethod { kAuto, kClosedForm, kQuadrature };

/// Order-independent |b|^2.
double squared_norm(std::span<const std::complex<double>> components);

/// Period vector of the cluster along S. Tori use closed forms under kAuto;
/// the sphere always uses quadrature, gated by a 2x refinement check
/// (throws kQuadratureNotConverged).
PeriodVector period_vector(const spectral::Cluster& cluster, const curves::Submanifold& sub,
                           PeriodMethod method = PeriodMethod::kAuto);

/// ∫_S φ_k dσ in closed form for a torus mode.
std::complex<double> torus_period(const spectral::Manifold& manifold,
                                  const std::array<int, 3>& k, const curves::Submanifold& sub);

/// Period components of `modes` by the given quadrature rule.
std::vector<std::complex<double>> quadrature_periods(const spectral::Manifold& manifold,
                                                     std::span<const spectral::EigenMode> modes,
                                                     const curves::QuadratureRule& rule);

struct KuznecovPoint {
  double h = 0.0;
  double value = 0.0;  // E(h, S)
};

/// E(h, S) = Σ_{frequency <= 1/h} |∫_S φ_j|^2 on a log-spaced h grid from 1
/// down to h_min (inclusive, `points` values; a single point when h_min = 1).
std::vector<KuznecovPoint> kuznecov_cumulative(const spectral::Manifold& manifold,
                                               const curves::Submanifold& sub, double h_min,
                                               int points = 16);

/// E(h, S) at a single cutoff.
double kuznecov_sum(const spectral::Manifold& manifold, const curves::Submanifold& sub,
                    double h);

/// N(S)_h computed from the modes with nonzero period only; agrees with
/// period_vector(...).squared_norm but never materialises the cluster on tori.
double window_period_norm(const spectral::Manifold& manifold, const curves::Submanifold& sub,
                          const spectral::SpectralWindow& window, double h);

struct KuznecovPrediction {
  double leading_coefficient = 0.0;
  double exponent = 0.0;           // fitted
  double expected_exponent = 0.0;  // n - d
};

/// Fits E ≈ c h^{-(n-d)}: the exponent by free log-log regression, c by
/// least squares at the expected exponent. Throws kPoorFit when the fitted
/// exponent misses n - d by more than 0.2.
KuznecovPrediction fit_kuznecov_leading(std::span<const KuznecovPoint> data,
                                        double expected_exponent);

/// CSV rows (modeLabel, re, im) for debugging exports.
std::vector<std::pair<std::string, std::complex<double>>> labelled_components(
    const spectral::Cluster& cluster, const PeriodVector& periods);

}  // namespace wavestat::periods
