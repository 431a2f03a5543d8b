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

#include "exactstats.hpp"

#include <cmath>
#include <string>

#include "error.hpp"
#include "numeric.hpp"

namespace wavestat::exactstats {
namespace {

void require_q(double q) {
  if (!(q >= 2.0) || !std::isfinite(q)) {
    throw Error(ErrorCode::kDomainError, "q must lie in [2, inf), got " + std::to_string(q));
  }
}

}  // namespace

void ExactLaw::validate() const {
  if (modes < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "exact law needs N_h >= 2, got " + std::to_string(modes));
  }
  if (!(period_norm_sq >= 0.0) || !std::isfinite(period_norm_sq)) {
    throw Error(ErrorCode::kInvalidArgument, "N(S)_h must be finite and nonnegative");
  }
}

double survival_exact(double lambda, const ExactLaw& law) {
  law.validate();
  if (!(lambda >= 0.0)) throw Error(ErrorCode::kDomainError, "survival needs λ >= 0");
  if (lambda == 0.0) return 1.0;
  if (law.period_norm_sq == 0.0) return 0.0;
  const double t = lambda * lambda / law.period_norm_sq;
  if (t >= 1.0) return 0.0;
  return std::exp(static_cast<double>(law.modes - 1) * std::log1p(-t));
}

double moment_exact(double p, const ExactLaw& law) {
  law.validate();
  if (!(p >= 0.0)) throw Error(ErrorCode::kDomainError, "moment order must be >= 0");
  if (p == 0.0) return 1.0;
  if (law.period_norm_sq == 0.0) return 0.0;
  const double log_value = std::log(0.5 * p) + 0.5 * p * std::log(law.period_norm_sq) +
                           log_beta(0.5 * p, static_cast<double>(law.modes));
  return std::exp(log_value);
}

double median_exact(const ExactLaw& law) {
  law.validate();
  const double fraction = -std::expm1(-std::log(2.0) / static_cast<double>(law.modes - 1));
  return std::sqrt(law.period_norm_sq * fraction);
}

double lipschitz_const_period(double p, double period_norm_sq) {
  if (!(p > 0.0)) throw Error(ErrorCode::kDomainError, "Lipschitz constant needs p > 0");
  if (!(period_norm_sq >= 0.0)) throw Error(ErrorCode::kDomainError, "N(S)_h must be >= 0");
  return p * std::pow(period_norm_sq, 0.5 * p);
}

double DeviationBound::evaluate(double r) const { return prefactor * std::exp(-rate * r * r); }

DeviationBound sphere_deviation_bound(std::int64_t modes, double lipschitz) {
  if (modes < 2) throw Error(ErrorCode::kInvalidArgument, "deviation bound needs N_h >= 2");
  if (!(lipschitz > 0.0)) throw Error(ErrorCode::kDomainError, "Lipschitz constant must be > 0");
  const double real_dim_minus_two = 2.0 * static_cast<double>(modes) - 2.0;
  return {2.0, real_dim_minus_two / (2.0 * lipschitz * lipschitz)};
}

PeriodConcentration concentration_bound_period(double r, double p, const ExactLaw& law) {
  law.validate();
  if (!(r > 0.0)) throw Error(ErrorCode::kDomainError, "deviation radius must be > 0");
  if (!(law.period_norm_sq > 0.0)) {
    throw Error(ErrorCode::kDomainError, "concentration bound needs N(S)_h > 0");
  }
  PeriodConcentration out;
  out.derived = sphere_deviation_bound(law.modes, lipschitz_const_period(p, law.period_norm_sq));
  out.stated = {2.0, static_cast<double>(law.modes - 2) / (p * std::pow(law.period_norm_sq, p))};
  out.derived_value = out.derived.evaluate(r);
  out.stated_value = out.stated.evaluate(r);
  return out;
}

double mean_median_gap_bound(double p, const ExactLaw& law) {
  law.validate();
  if (law.modes == 2) {
    throw Error(ErrorCode::kUnbounded, "mean-median gap bound divides by N_h - 2 = 0");
  }
  return 0.5 * kPi *
         std::sqrt(2.0 * std::pow(law.period_norm_sq, p) / static_cast<double>(law.modes - 2));
}

DeviationBound renormalized_bound(const ExactLaw& law) {
  law.validate();
  return {2.0, static_cast<double>(law.modes - 1)};
}

double renormalized_bound(double r, double /*p*/, const ExactLaw& law) {
  if (!(r > 0.0)) throw Error(ErrorCode::kDomainError, "deviation radius must be > 0");
  return renormalized_bound(law).evaluate(r);
}

double bqh_moment(double q, std::int64_t modes, double profile_integral) {
  require_q(q);
  if (modes < 1) throw Error(ErrorCode::kInvalidArgument, "B_{q,h} needs N_h >= 1");
  if (!(profile_integral >= 0.0)) {
    throw Error(ErrorCode::kDomainError, "pointwise profile integral must be >= 0");
  }
  if (profile_integral == 0.0) return 0.0;
  return std::exp(std::log(0.5 * q) + std::log(profile_integral) +
                  log_beta(0.5 * q, static_cast<double>(modes)));
}

double bqh_exact(double q, std::int64_t modes, double profile_integral) {
  return std::pow(bqh_moment(q, modes, profile_integral), 1.0 / q);
}

double torus_profile_integral(double q, std::int64_t modes, double sub_volume,
                              double manifold_volume) {
  require_q(q);
  return sub_volume * std::pow(static_cast<double>(modes) / manifold_volume, 0.5 * q);
}

double bqh_sharp_limit(double q, double sub_volume, double manifold_volume) {
  require_q(q);
  const double log_limit = log_gamma(0.5 * q + 1.0) + std::log(sub_volume) -
                           0.5 * q * std::log(manifold_volume);
  return std::exp(log_limit / q);
}

double delta_exponent(double q) {
  require_q(q);
  return q <= 4.0 ? 0.25 : 0.5 - 1.0 / q;
}

double rate_exponent(double q) {
  require_q(q);
  return q <= 4.0 ? 0.5 : 2.0 / q;
}

}  // namespace wavestat::exactstats
