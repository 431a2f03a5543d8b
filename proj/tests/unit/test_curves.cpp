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
#include <complex>
#include <numbers>

#include "curves.hpp"
#include "error.hpp"

namespace wavestat::curves {
namespace {

using spectral::Manifold;
constexpr double kPi = std::numbers::pi;

SubmanifoldSpec torus_line(std::array<double, 3> direction, bool closed, double length = 0.0) {
  SubmanifoldSpec spec;
  spec.kind = SubmanifoldKind::kTorusLine;
  spec.direction = direction;
  spec.closed = closed;
  spec.length = length;
  return spec;
}

SubmanifoldSpec equator() {
  SubmanifoldSpec spec;
  spec.kind = SubmanifoldKind::kSphereLatitudeCircle;
  spec.colatitude = kPi / 2;
  return spec;
}

ErrorCode code_of(const Manifold& m, const SubmanifoldSpec& spec) {
  try {
    (void)build_submanifold(m, spec);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kIoError;
}

TEST(Curves, CoordinateCircleHasLengthTwoPi) {
  const auto sub = build_submanifold(Manifold::flat_torus(2), torus_line({1, 0, 0}, true));
  EXPECT_NEAR(sub.volume(), 2 * kPi, 1e-15);
  EXPECT_EQ(sub.dimension(), 1);
}

TEST(Curves, DiagonalClosedGeodesicLength) {
  const auto sub = build_submanifold(Manifold::flat_torus(2), torus_line({1, 1, 0}, true));
  EXPECT_NEAR(sub.volume(), 2 * kPi * std::sqrt(2.0), 1e-14);
}

TEST(Curves, EquatorLength) {
  const auto sub = build_submanifold(Manifold::round_sphere(), equator());
  EXPECT_NEAR(sub.volume(), 2 * kPi, 1e-15);
}

TEST(Curves, SubtorusOfTorus3IsTwoDimensional) {
  SubmanifoldSpec spec;
  spec.kind = SubmanifoldKind::kTorusSubtorus;
  spec.fixed = {{2, 0.0}};
  const auto sub = build_submanifold(Manifold::flat_torus(3), spec);
  EXPECT_EQ(sub.dimension(), 2);
  EXPECT_NEAR(sub.volume(), 4 * kPi * kPi, 1e-13);
}

TEST(Curves, InvalidSpecsRejected) {
  const auto t2 = Manifold::flat_torus(2);
  EXPECT_EQ(code_of(t2, torus_line({2, 2, 0}, true)), ErrorCode::kInvalidDirection);
  EXPECT_EQ(code_of(t2, torus_line({0, 0, 0}, false, 1.0)), ErrorCode::kInvalidDirection);
  EXPECT_EQ(code_of(t2, torus_line({0.5, 1, 0}, true)), ErrorCode::kInvalidDirection);
  EXPECT_EQ(code_of(t2, torus_line({1, 0, 0}, false, 0.0)), ErrorCode::kInvalidLength);
  EXPECT_EQ(code_of(t2, torus_line({1, 0, 0}, false, -1.0)), ErrorCode::kInvalidLength);
  EXPECT_EQ(code_of(t2, torus_line({1, 0, 0}, true, 3.0)), ErrorCode::kInvalidLength);
  SubmanifoldSpec arc;
  arc.kind = SubmanifoldKind::kSphereGreatArc;
  arc.closed = false;
  arc.length = 0.0;
  EXPECT_EQ(code_of(Manifold::round_sphere(), arc), ErrorCode::kInvalidLength);
  arc.length = 1.0;
  arc.e2 = {1.0, 0.0, 1.0};
  EXPECT_EQ(code_of(Manifold::round_sphere(), arc), ErrorCode::kInvalidDirection);
  EXPECT_EQ(code_of(t2, equator()), ErrorCode::kInvalidArgument);
}

TEST(Curves, EquatorRuleForFrequencySixteen) {
  const auto sub = build_submanifold(Manifold::round_sphere(), equator());
  const auto rule = quadrature(sub, 16.0);
  ASSERT_EQ(rule.size(), 512u);
  for (double w : rule.weights) EXPECT_NEAR(w, 2 * kPi / 512, 1e-15);
}

TEST(Curves, NodeCountRule) {
  EXPECT_EQ(nyquist_node_count(2 * kPi, 0.5), 64);
  EXPECT_EQ(nyquist_node_count(2 * kPi, 16.0), 512);
  EXPECT_EQ(nyquist_node_count(1.0, 100.0), static_cast<std::int64_t>(std::ceil(400.0 / (2 * kPi))) * 8);
}

TEST(Curves, WeightsSumToVolume) {
  const auto t2 = Manifold::flat_torus(2);
  for (const auto& spec :
       {torus_line({1, 0, 0}, true), torus_line({2, 3, 0}, true), torus_line({1, 0.3, 0}, false, 2.5)}) {
    const auto sub = build_submanifold(t2, spec);
    const auto rule = quadrature(sub, 37.0);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    EXPECT_NEAR(sum / sub.volume(), 1.0, 1e-12);
  }
  SubmanifoldSpec arc;
  arc.kind = SubmanifoldKind::kSphereGreatArc;
  arc.closed = false;
  arc.length = 1.3;
  const auto sub = build_submanifold(Manifold::round_sphere(), arc);
  double sum = 0.0;
  for (double w : quadrature(sub, 20.0).weights) sum += w;
  EXPECT_NEAR(sum / 1.3, 1.0, 1e-12);
}

TEST(Curves, TrapezoidIntegratesTrigonometricPolynomialExactly) {
  const auto sub = build_submanifold(Manifold::flat_torus(2), torus_line({1, 0, 0}, true));
  const auto rule = quadrature(sub, 12.0);
  for (int n = 0; n <= 12; ++n) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < rule.size(); ++j) {
      acc += rule.weights[j] * std::polar(1.0, n * rule.params[j][0]);
    }
    EXPECT_NEAR(std::abs(acc - (n == 0 ? 2 * kPi : 0.0)), 0.0, 1e-12) << n;
  }
}

TEST(Curves, GaussLegendreIntegratesPolynomials) {
  SubmanifoldSpec spec = torus_line({1, 0, 0}, false, 2.0);
  const auto sub = build_submanifold(Manifold::flat_torus(2), spec);
  const auto rule = quadrature_with_count(sub, 10);
  for (int k = 0; k < 20; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) acc += rule.weights[j] * std::pow(rule.params[j][0], k);
    EXPECT_NEAR(acc, std::pow(2.0, k + 1) / (k + 1), 1e-12 * std::pow(2.0, k + 1)) << k;
  }
}

TEST(Curves, PointsLieOnTheCurve) {
  const auto sub = build_submanifold(Manifold::round_sphere(), equator());
  const auto p = sub.point_at(1.0);
  EXPECT_NEAR(p.coords[0], kPi / 2, 1e-15);
  EXPECT_NEAR(p.coords[1], 1.0, 1e-15);
  SubmanifoldSpec arc;
  arc.kind = SubmanifoldKind::kSphereGreatArc;
  arc.closed = false;
  arc.length = 1.0;
  arc.e1 = {0.0, 0.0, 1.0};
  arc.e2 = {1.0, 0.0, 0.0};
  const auto meridian = build_submanifold(Manifold::round_sphere(), arc);
  const auto q = meridian.point_at(0.4);
  EXPECT_NEAR(q.coords[0], 0.4, 1e-15);
  EXPECT_NEAR(q.coords[1], 0.0, 1e-15);
}

}  // namespace
}  // namespace wavestat::curves
