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

#include "special_functions.hpp"

namespace wavestat::exactstats {

/// The pair (N_h, N(S)_h) that parameterises the law of F_1 = |∫_S u|.
struct ExactLaw {
  std::int64_t modes = 2;       // N_h >= 2
  double period_norm_sq = 0.0;  // N(S)_h = |b|^2 >= 0

  void validate() const;
};

/// P(F_1 > λ) = (1 - λ²/NS)^{N-1}, clamped to 0 for λ >= sqrt(NS).
double survival_exact(double lambda, const ExactLaw& law);

/// A_p = E[F_1^p] = (p/2) NS^{p/2} B(p/2, N). p = 0 gives 1.
double moment_exact(double p, const ExactLaw& law);

/// The λ with survival_exact(λ) = 1/2.
double median_exact(const ExactLaw& law);

/// Lipschitz constant p NS^{p/2} of u -> |∫_S u|^p on the unit sphere.
double lipschitz_const_period(double p, double period_norm_sq);

/// P(|X - median| > r) <= prefactor exp(-rate r²).
struct DeviationBound {
  double prefactor = 2.0;
  double rate = 0.0;

  double evaluate(double r) const;
};

struct PeriodConcentration {
  DeviationBound derived;  // real dimension 2N: rate (2N - 2) / (2 L²)
  DeviationBound stated;   // rate (N - 2) / (p NS^p)
  double derived_value = 0.0;
  double stated_value = 0.0;
};

PeriodConcentration concentration_bound_period(double r, double p, const ExactLaw& law);

/// Gaussian concentration on the unit sphere of C^N = R^{2N} for a function
/// with Lipschitz constant `lipschitz`.
DeviationBound sphere_deviation_bound(std::int64_t modes, double lipschitz);

/// (π/2) (2 NS^p / (N - 2))^{1/2}; throws kUnbounded at N = 2.
double mean_median_gap_bound(double p, const ExactLaw& law);

/// Bound for F_p / (p NS^{p/2}): 2 exp(-(N - 1) r²).
DeviationBound renormalized_bound(const ExactLaw& law);
double renormalized_bound(double r, double p, const ExactLaw& law);

/// E‖u‖_{L^q(S)}^q = q (∫_S |b_s|^q dσ) (1/2) B(q/2, N) for N >= 1.
double bqh_moment(double q, std::int64_t modes, double profile_integral);

/// B_{q,h} = bqh_moment^{1/q}.
double bqh_exact(double q, std::int64_t modes, double profile_integral);

/// ∫_S |b_s|^q dσ on a flat torus, where |b_s|² = N / Vol(M) everywhere.
double torus_profile_integral(double q, std::int64_t modes, double sub_volume,
                              double manifold_volume);

/// lim_{h->0} B_{q,h} = (Γ(q/2 + 1) Vol(S) / Vol(M)^{q/2})^{1/q}.
double bqh_sharp_limit(double q, double sub_volume, double manifold_volume);

/// δ(q): 1/4 for 2 <= q <= 4, 1/2 - 1/q for q >= 4. Throws kDomainError for q < 2.
double delta_exponent(double q);

/// g with G(h) = h^{-g}: 1/2 for 2 <= q <= 4, 2/q for q >= 4.
double rate_exponent(double q);

}  // namespace wavestat::exactstats
