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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "curves.hpp"
#include "error.hpp"
#include "periods.hpp"
#include "spectral.hpp"

namespace wavestat::periods {
namespace {

using curves::SubmanifoldKind;
using curves::SubmanifoldSpec;
using spectral::Manifold;
constexpr double kPi = std::numbers::pi;

curves::Submanifold horizontal_circle() {
  SubmanifoldSpec spec;
  spec.kind = SubmanifoldKind::kTorusLine;
  spec.direction = {1.0, 0.0, 0.0};
  return curves::build_submanifold(Manifold::flat_torus(2), spec);
}

std::int64_t integers_in(double lo, double hi) {
  return static_cast<std::int64_t>(std::floor(hi)) - static_cast<std::int64_t>(std::floor(lo));
}

TEST(Periods, HorizontalCircleStandardExample) {
  const auto sub = horizontal_circle();
  const auto cluster = spectral::enumerate_cluster(Manifold::flat_torus(2), {1.0, 6.0}, 0.1);
  const auto pv = period_vector(cluster, sub);
  EXPECT_DOUBLE_EQ(pv.squared_norm, 12.0);
  for (std::size_t j = 0; j < cluster.dimension(); ++j) {
    const auto& k = cluster.modes[j].label;
    if (k[0] == 0) {
      EXPECT_NEAR(std::abs(pv.components[j] - 1.0), 0.0, 1e-15);
    } else {
      EXPECT_EQ(pv.components[j], std::complex<double>(0.0, 0.0));
    }
  }
}

TEST(Periods, NormIsTwiceIntegerCount) {
  const auto sub = horizontal_circle();
  for (double inv_h : {7.0, 13.5, 20.0, 111.0}) {
    const double h = 1.0 / inv_h;
    const auto cluster = spectral::enumerate_cluster(Manifold::flat_torus(2), {1.0, 6.0}, h);
    const auto frequency = spectral::frequency_bounds({1.0, 6.0}, h);
    const double expected = 2.0 * integers_in(frequency.lower, frequency.upper);
    EXPECT_DOUBLE_EQ(period_vector(cluster, sub).squared_norm, expected) << inv_h;
    EXPECT_DOUBLE_EQ(window_period_norm(Manifold::flat_torus(2), sub, {1.0, 6.0}, h), expected);
  }
}

TEST(Periods, Torus3CoordinateSubtorus) {
  SubmanifoldSpec spec;
  spec.kind = SubmanifoldKind::kTorusSubtorus;
  spec.fixed = {{2, 0.0}};
  const auto t3 = Manifold::flat_torus(3);
  const auto sub = curves::build_submanifold(t3, spec);
  const auto cluster = spectral::enumerate_cluster(t3, {1.0, 6.0}, 0.05);
  const auto pv = period_vector(cluster, sub);
  EXPECT_NEAR(pv.squared_norm, 4.0 * kPi * 6.0, 1e-10);
  const auto quad = period_vector(cluster, sub, PeriodMethod::kQuadrature);
  for (std::size_t j = 0; j < pv.size(); ++j) {
    EXPECT_NEAR(std::abs(pv.components[j] - quad.components[j]), 0.0, 1e-10);
  }
}

TEST(Periods, ClosedFormMatchesQuadratureOnTori) {
  const auto t2 = Manifold::flat_torus(2);
  std::vector<SubmanifoldSpec> specs(3);
  specs[0].direction = {1.0, 1.0, 0.0};
  specs[0].base = {0.3, 1.1, 0.0};
  specs[1].direction = {2.0, -3.0, 0.0};
  specs[2].direction = {1.0, 0.7, 0.0};
  specs[2].closed = false;
  specs[2].length = 2.3;
  const auto cluster = spectral::enumerate_cluster(t2, {1.0, 6.0}, 0.1);
  for (const auto& spec : specs) {
    const auto sub = curves::build_submanifold(t2, spec);
    const auto closed = period_vector(cluster, sub, PeriodMethod::kClosedForm);
    const auto quad = period_vector(cluster, sub, PeriodMethod::kQuadrature);
    for (std::size_t j = 0; j < closed.size(); ++j) {
      EXPECT_NEAR(std::abs(closed.components[j] - quad.components[j]), 0.0, 1e-10);
    }
  }
}

TEST(Periods, TransverseModesVanishOnClosedGeodesic) {
  SubmanifoldSpec spec;
  spec.direction = {1.0, 2.0, 0.0};
  const auto t2 = Manifold::flat_torus(2);
  const auto sub = curves::build_submanifold(t2, spec);
  EXPECT_EQ(torus_period(t2, {3, 1, 0}, sub), std::complex<double>(0.0, 0.0));
  EXPECT_NEAR(std::abs(torus_period(t2, {2, -1, 0}, sub)), sub.volume() / (2 * kPi), 1e-14);
}

TEST(Periods, SphereEquatorUsesConvergedQuadrature) {
  const auto s2 = Manifold::round_sphere();
  SubmanifoldSpec spec;
  spec.kind = SubmanifoldKind::kSphereLatitudeCircle;
  const auto sub = curves::build_submanifold(s2, spec);
  const auto cluster = spectral::enumerate_cluster(s2, {1.0, 5.0}, 0.1);
  const auto pv = period_vector(cluster, sub);
  double expected = 0.0;
  for (std::size_t j = 0; j < cluster.dimension(); ++j) {
    const int l = cluster.modes[j].label[0];
    const int m = cluster.modes[j].label[1];
    if (m != 0) {
      EXPECT_LT(std::abs(pv.components[j]), 1e-12);
    } else {
      const double value = 2 * kPi * spectral::zonal_harmonic(l, 0.0);
      EXPECT_NEAR(pv.components[j].real(), value, 1e-12);
      expected += value * value;
    }
  }
  EXPECT_NEAR(pv.squared_norm, expected, 1e-12);
  EXPECT_NEAR(window_period_norm(s2, sub, {1.0, 5.0}, 0.1), expected, 1e-12);
  EXPECT_THROW((void)period_vector(cluster, sub, PeriodMethod::kClosedForm), Error);
}

TEST(Periods, KuznecovSumOnHorizontalCircle) {
  const auto sub = horizontal_circle();
  for (double h : {1.0, 0.5, 0.1, 0.013, 0.002}) {
    const double e = kuznecov_sum(Manifold::flat_torus(2), sub, h);
    EXPECT_DOUBLE_EQ(e, 2.0 * std::floor(1.0 / h) + 1.0) << h;
  }
  const auto data = kuznecov_cumulative(Manifold::flat_torus(2), sub, 0.002, 16);
  ASSERT_EQ(data.size(), 16u);
  EXPECT_DOUBLE_EQ(data.front().h, 1.0);
  EXPECT_NEAR(data.back().h, 0.002, 1e-15);
  EXPECT_NEAR(data.back().h * data.back().value, 2.0, 0.04);
  const auto fit = fit_kuznecov_leading(data, 1.0);
  EXPECT_NEAR(fit.leading_coefficient, 2.0, 0.05);
  EXPECT_NEAR(fit.exponent, 1.0, 0.05);
}

TEST(Periods, KuznecovFitOnSyntheticData) {
  std::vector<KuznecovPoint> exact;
  std::vector<KuznecovPoint> flat;
  for (double h = 1.0; h > 1e-3; h /= 2.0) {
    exact.push_back({h, 7.0 / h});
    flat.push_back({h, 5.0});
  }
  const auto fit = fit_kuznecov_leading(exact, 1.0);
  EXPECT_NEAR(fit.leading_coefficient, 7.0, 1e-10);
  EXPECT_NEAR(fit.exponent, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(fit.expected_exponent, 1.0);
  try {
    (void)fit_kuznecov_leading(flat, 1.0);
    FAIL() << "expected PoorFit";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPoorFit);
  }
}

TEST(Periods, SquaredNormIsPermutationInvariant) {
  std::vector<std::complex<double>> v{{1e-8, 3.0}, {2.5, -1e-3}, {1e8, 0.0}, {0.1, 0.2}};
  const double a = squared_norm(v);
  std::swap(v[0], v[3]);
  std::swap(v[1], v[2]);
  EXPECT_EQ(a, squared_norm(v));
}

}  // namespace
}  // namespace wavestat::periods
