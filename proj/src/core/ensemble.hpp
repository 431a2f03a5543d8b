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
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "curves.hpp"
#include "spectral.hpp"

namespace wavestat::ensemble {

/// A point z on the unit sphere of C^N, fully determined by (seed, index).
struct CoefficientVector {
  std::vector<std::complex<double>> z;
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;
};

/// u = Σ z_k φ_k for a cluster.
struct RandomFieldSample {
  const spectral::Cluster* cluster = nullptr;
  CoefficientVector coefficients;
};

/// Uniform draw on the unit sphere of C^N: 2N standard normals from the
/// counter stream (seed, index), normalised. An all-zero draw retries on the
/// next attempt substream.
CoefficientVector sample_coefficients(std::size_t n, std::uint64_t seed, std::uint64_t index);

/// In-place variant used by the Monte Carlo loops; `scratch` is resized as
/// needed and may be reused across calls.
void fill_coefficients(std::span<std::complex<double>> out, std::uint64_t seed,
                       std::uint64_t index, std::vector<double>& scratch);

/// F_1(u) = |∫_S u dσ| = |Σ_k z_k b_k|.
double period_rv(std::span<const std::complex<double>> z,
                 std::span<const std::complex<double>> periods);

/// u(x) = Σ_k z_k φ_k(x).
std::complex<double> field_eval(const RandomFieldSample& sample, const spectral::Point& x);
std::complex<double> field_eval(const spectral::Cluster& cluster,
                                std::span<const std::complex<double>> z, const spectral::Point& x);

/// (Σ_j w_j |v_j|^q)^{1/q}.
double lq_norm(std::span<const std::complex<double>> values, std::span<const double> weights,
               double q);

/// ‖u‖_{L^q(S)} evaluated through the quadrature rule.
double lq_norm_rv(const RandomFieldSample& sample, const curves::QuadratureRule& rule, double q);

/// ∫_S |b_{s,h}|^q dσ(s) by the quadrature rule.
double pointwise_norm_integral(const spectral::Cluster& cluster,
                               const curves::QuadratureRule& rule, double q);

/// Linear map z -> (u(node_j))_j. Closed rational lines on T² use an FFT of
/// the along-curve Fourier coefficients; everything else is a dense matrix.
class RestrictionOperator {
 public:
  RestrictionOperator(const spectral::Cluster& cluster, const curves::Submanifold& sub,
                      const curves::QuadratureRule& rule);
  ~RestrictionOperator();
  RestrictionOperator(RestrictionOperator&&) noexcept;
  RestrictionOperator& operator=(RestrictionOperator&&) noexcept;
  RestrictionOperator(const RestrictionOperator&) = delete;
  RestrictionOperator& operator=(const RestrictionOperator&) = delete;

  std::size_t mode_count() const noexcept;
  std::size_t node_count() const noexcept;
  std::span<const double> weights() const noexcept;
  bool uses_fft() const noexcept;

  /// Per-thread scratch space.
  struct Workspace {
    std::vector<std::complex<double>> buffer;
  };

  void apply(std::span<const std::complex<double>> z, std::span<std::complex<double>> values,
             Workspace& ws) const;
  /// Φ^* v (unweighted).
  void apply_adjoint(std::span<const std::complex<double>> values,
                     std::span<std::complex<double>> z, Workspace& ws) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Estimate of the Lipschitz constant of z -> ‖Φz‖_{L^q(S)} on the sphere,
/// i.e. the 2 -> q operator norm, by (nonlinear) power iteration started
/// from `starts` random points. Exact up to iteration error for q = 2; a
/// lower bound otherwise.
double restriction_norm_estimate(const RestrictionOperator& op, double q, std::uint64_t seed,
                                 int starts = 4, int iterations = 200);

}  // namespace wavestat::ensemble
