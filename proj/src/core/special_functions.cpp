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

#include "special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "error.hpp"

namespace wavestat::exactstats {
namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kHalfLogTwoPi = 0.91893853320467274178032973640561764;
constexpr double kStirlingThreshold = 13.0;
constexpr int kSeriesTerms = 42;

// zeta(k) - 1 for k = 2..kSeriesTerms+1 by Euler-Maclaurin with cutoff 16.
std::array<double, kSeriesTerms + 2> make_zeta_minus_one() {
  // B_{2j} / (2j)!
  constexpr std::array<long double, 8> kBernoulliOverFactorial = {
      1.0L / 6.0L / 2.0L,
      -1.0L / 30.0L / 24.0L,
      1.0L / 42.0L / 720.0L,
      -1.0L / 30.0L / 40320.0L,
      5.0L / 66.0L / 3628800.0L,
      -691.0L / 2730.0L / 479001600.0L,
      7.0L / 6.0L / 87178291200.0L,
      -3617.0L / 510.0L / 20922789888000.0L,
  };
  constexpr int kCutoff = 16;
  std::array<double, kSeriesTerms + 2> out{};
  for (int k = 2; k < static_cast<int>(out.size()); ++k) {
    const long double s = k;
    long double tail = std::pow(static_cast<long double>(kCutoff), 1 - s) / (s - 1) +
                       0.5L * std::pow(static_cast<long double>(kCutoff), -s);
    long double rising = s;  // s (s+1) ... (s+2j-2)
    for (int j = 1; j <= 8; ++j) {
      tail += kBernoulliOverFactorial[j - 1] * rising *
              std::pow(static_cast<long double>(kCutoff), -s - 2 * j + 1);
      rising *= (s + 2 * j - 1) * (s + 2 * j);
    }
    long double head = 0.0L;
    for (int n = kCutoff - 1; n >= 2; --n) {
      head += std::pow(static_cast<long double>(n), -s);
    }
    out[k] = static_cast<double>(head + tail);
  }
  return out;
}

const std::array<double, kSeriesTerms + 2>& zeta_minus_one() {
  static const auto table = make_zeta_minus_one();
  return table;
}

// log Γ(2 + eps) for |eps| <= 0.5.
double log_gamma_two_plus(double eps) {
  const auto& z = zeta_minus_one();
  double acc = 0.0;
  for (int k = kSeriesTerms + 1; k >= 2; --k) {
    const double coeff = ((k % 2 == 0) ? 1.0 : -1.0) * z[k] / k;
    acc = acc * eps + coeff;
  }
  return eps * ((1.0 - kEulerGamma) + eps * acc);
}

// log Γ(x) - [(x - 1/2) log x - x + log(2π)/2].
double stirling_correction(double x) {
  constexpr std::array<double, 8> kCoeffs = {
      1.0 / 12.0,         -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0,       -691.0 / 360360.0, 1.0 / 156.0,
      -3617.0 / 122400.0,
  };
  const double inv2 = 1.0 / (x * x);
  double acc = 0.0;
  for (int k = static_cast<int>(kCoeffs.size()) - 1; k >= 0; --k) {
    acc = acc * inv2 + kCoeffs[k];
  }
  return acc / x;
}

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || std::isinf(x)) {
    throw Error(ErrorCode::kDomainError,
                std::string(name) + " must be positive and finite, got " + std::to_string(x));
  }
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma argument");
  if (x < 0.5) {
    // Γ(x) = Γ(x + 2) / (x (x + 1))
    return log_gamma_two_plus(x) - std::log(x) - std::log1p(x);
  }
  if (x < 1.5) {
    const double eps = x - 1.0;
    return log_gamma_two_plus(eps) - std::log1p(eps);
  }
  if (x <= 2.5) return log_gamma_two_plus(x - 2.0);
  if (x < kStirlingThreshold) {
    const double shift = std::ceil(x - 2.5);
    const double y = x - shift;
    double prod = 1.0;
    for (double t = y; t < x; t += 1.0) prod *= t;
    return log_gamma_two_plus(y - 2.0) + std::log(prod);
  }
  return (x - 0.5) * std::log(x) - x + kHalfLogTwoPi + stirling_correction(x);
}

double log_beta(double a, double b) {
  require_positive(a, "log_beta first argument");
  require_positive(b, "log_beta second argument");
  const double small = std::min(a, b);
  const double large = std::max(a, b);
  if (large < kStirlingThreshold) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
  }
  const double sum = large + small;
  // log Γ(large) - log Γ(large + small) without forming either term.
  const double ratio = -(large - 0.5) * std::log1p(small / large) - small * std::log(sum) +
                       small + (stirling_correction(large) - stirling_correction(sum));
  return log_gamma(small) + ratio;
}

double beta(double a, double b) { return std::exp(log_beta(a, b)); }

}  // namespace wavestat::exactstats
