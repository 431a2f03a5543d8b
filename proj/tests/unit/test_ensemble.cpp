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

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "curves.hpp"
#include "ensemble.hpp"
#include "exactstats.hpp"
#include "periods.hpp"
#include "rng.hpp"
#include "spectral.hpp"
#include "stats.hpp"

namespace wavestat::ensemble {
namespace {

using spectral::Manifold;
constexpr double kPi = std::numbers::pi;

curves::Submanifold horizontal_circle() {
  curves::SubmanifoldSpec spec;
  spec.direction = {1.0, 0.0, 0.0};
  return curves::build_submanifold(Manifold::flat_torus(2), spec);
}

double vector_norm(const std::vector<std::complex<double>>& z) {
  double s = 0.0;
  for (const auto& v : z) s += std::norm(v);
  return std::sqrt(s);
}

TEST(Philox, KnownAnswerVectors) {
  using Block = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
  EXPECT_EQ(philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                       {0xffffffffu, 0xffffffffu}),
            (Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
  EXPECT_EQ(philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                       {0xa4093822u, 0x299f31d0u}),
            (Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Philox, DerivedSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (std::uint64_t tag = 0; tag < 20; ++tag) seen.insert(derive_seed(seed, tag));
  }
  EXPECT_EQ(seen.size(), 1000u);
}

TEST(Sampling, UnitNormAndDeterminism) {
  for (std::size_t n : {1u, 2u, 17u, 480u}) {
    for (std::uint64_t index : {0ull, 1ull, 123456789ull}) {
      const auto a = sample_coefficients(n, 42, index);
      const auto b = sample_coefficients(n, 42, index);
      EXPECT_EQ(a.z, b.z);
      EXPECT_EQ(a.seed, 42u);
      EXPECT_EQ(a.sample_index, index);
      ASSERT_EQ(a.z.size(), n);
      EXPECT_NEAR(vector_norm(a.z), 1.0, 1e-12);
    }
  }
  EXPECT_NE(sample_coefficients(8, 42, 0).z, sample_coefficients(8, 42, 1).z);
  EXPECT_NE(sample_coefficients(8, 42, 0).z, sample_coefficients(8, 43, 0).z);
}

TEST(Sampling, SingleModeIsAPhase) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    EXPECT_NEAR(std::abs(sample_coefficients(1, 9, i).z[0]), 1.0, 1e-15);
  }
}

TEST(Sampling, FirstCoordinateFollowsBetaLaw) {
  constexpr std::int64_t kM = 100000;
  constexpr int kN = 20;
  std::vector<double> values(kM);
  std::vector<std::complex<double>> z(kN);
  std::vector<double> scratch;
  for (std::int64_t i = 0; i < kM; ++i) {
    fill_coefficients(z, 2024, static_cast<std::uint64_t>(i), scratch);
    values[i] = std::norm(z[0]);
  }
  std::sort(values.begin(), values.end());
  const double d = stats::ks_distance(values, [](double t) {
    return 1.0 - std::pow(1.0 - std::clamp(t, 0.0, 1.0), kN - 1);
  });
  EXPECT_LE(d, stats::ks_threshold_001(kM));
}

TEST(PeriodRv, CauchySchwarzCases) {
  const std::vector<std::complex<double>> b{{1.0, 2.0}, {0.0, -1.0}, {3.0, 0.5}};
  const double nb = vector_norm(b);
  std::vector<std::complex<double>> aligned(3);
  for (int i = 0; i < 3; ++i) aligned[i] = std::conj(b[i]) / nb;
  EXPECT_NEAR(period_rv(aligned, b), nb, 1e-14);
  const std::vector<std::complex<double>> b2{{1.0, 0.0}, {0.0, 0.0}};
  const std::vector<std::complex<double>> orth{{0.0, 0.0}, {0.0, 1.0}};
  EXPECT_EQ(period_rv(orth, b2), 0.0);
}

TEST(PeriodRv, SecondMomentSymmetryOracle) {
  const auto cluster = spectral::enumerate_cluster(Manifold::flat_torus(2), {1.0, 6.0}, 0.1);
  const auto pv = periods::period_vector(cluster, horizontal_circle());
  constexpr std::int64_t kM = 100000;
  std::vector<double> sq(kM);
  std::vector<std::complex<double>> z(cluster.dimension());
  std::vector<double> scratch;
  for (std::int64_t i = 0; i < kM; ++i) {
    fill_coefficients(z, 11, static_cast<std::uint64_t>(i), scratch);
    const double f = period_rv(z, pv.components);
    sq[i] = f * f;
  }
  const auto est = stats::mean_and_stderr(sq);
  const double exact = pv.squared_norm / static_cast<double>(cluster.dimension());
  EXPECT_LE(std::abs(est.mean - exact), 3.0 * est.standard_error);
}

TEST(PeriodRv, UnitaryInvarianceTwoSampleKs) {
  constexpr int kN = 30;
  constexpr std::int64_t kM = 10000;
  const double ns = 7.0;
  std::vector<std::complex<double>> spike(kN);
  spike[0] = std::sqrt(ns);
  std::vector<std::complex<double>> spread(kN, std::polar(std::sqrt(ns / kN), 0.4));
  std::vector<double> a(kM);
  std::vector<double> b(kM);
  std::vector<std::complex<double>> z(kN);
  std::vector<double> scratch;
  for (std::int64_t i = 0; i < kM; ++i) {
    fill_coefficients(z, 1, static_cast<std::uint64_t>(i), scratch);
    a[i] = period_rv(z, spike);
    fill_coefficients(z, 2, static_cast<std::uint64_t>(i), scratch);
    b[i] = period_rv(z, spread);
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_LE(stats::ks_two_sample(a, b), stats::ks_two_sample_threshold_001(kM, kM));
}

TEST(FieldEval, SingleModeIsTheMode) {
  spectral::Cluster cluster;
  cluster.modes = {spectral::EigenMode{{3, -4, 0}, 25}};
  const std::vector<std::complex<double>> z{{1.0, 0.0}};
  const spectral::Point x{{0.7, 2.1, 0.0}};
  EXPECT_EQ(field_eval(cluster, z, x), spectral::torus_mode(cluster.manifold, {3, -4, 0}, x));
}

TEST(FieldEval, TorusL2NormIsOne) {
  const auto cluster = spectral::enumerate_cluster(Manifold::flat_torus(2), {1.0, 3.0}, 0.5);
  const auto sample = sample_coefficients(cluster.dimension(), 5, 0);
  const int side = static_cast<int>(4.0 * std::ceil(cluster.max_frequency()));
  const double step = 2 * kPi / side;
  double acc = 0.0;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      acc += std::norm(field_eval(cluster, sample.z, {{i * step, j * step, 0.0}})) * step * step;
    }
  }
  EXPECT_NEAR(acc, 1.0, 1e-6);
}

TEST(FieldEval, PointwiseSecondMoment) {
  const auto cluster = spectral::enumerate_cluster(Manifold::flat_torus(2), {1.0, 6.0}, 0.2);
  const spectral::Point x{{0.4, 5.0, 0.0}};
  constexpr std::int64_t kM = 20000;
  std::vector<double> values(kM);
  for (std::int64_t i = 0; i < kM; ++i) {
    RandomFieldSample s{&cluster, sample_coefficients(cluster.dimension(), 3, i)};
    values[i] = std::norm(field_eval(s, x));
  }
  const auto est = stats::mean_and_stderr(values);
  EXPECT_LE(std::abs(est.mean - 1.0 / (4 * kPi * kPi)), 3.0 * est.standard_error);
}

TEST(LqNorm, ConstantModulusSingleMode) {
  spectral::Cluster cluster;
  cluster.modes = {spectral::EigenMode{{0, 11, 0}, 121}};
  const auto sub = horizontal_circle();
  const auto rule = curves::quadrature(sub, 11.0);
  for (double q : {2.0, 3.0, 4.0, 6.0}) {
    for (std::uint64_t i = 0; i < 5; ++i) {
      RandomFieldSample s{&cluster, sample_coefficients(1, 17, i)};
      const double expected = std::pow(2 * kPi * std::pow(2 * kPi, -q), 1.0 / q);
      EXPECT_NEAR(lq_norm_rv(s, rule, q), expected, 1e-13);
    }
  }
}

TEST(LqNorm, PhaseInvariance) {
  const auto cluster = spectral::enumerate_cluster(Manifold::flat_torus(2), {1.0, 6.0}, 0.1);
  const auto rule = curves::quadrature(horizontal_circle(), cluster.max_frequency());
  RandomFieldSample s{&cluster, sample_coefficients(cluster.dimension(), 8, 1)};
  RandomFieldSample rotated = s;
  for (auto& v : rotated.coefficients.z) v *= std::polar(1.0, 2.2);
  for (double q : {2.0, 4.0, 6.0}) {
    EXPECT_NEAR(lq_norm_rv(s, rule, q), lq_norm_rv(rotated, rule, q), 1e-13);
  }
}

TEST(LqNorm, ProfileIntegralOnTorus) {
  const auto cluster = spectral::enumerate_cluster(Manifold::flat_torus(2), {1.0, 6.0}, 0.1);
  const auto sub = horizontal_circle();
  const auto rule = curves::quadrature(sub, cluster.max_frequency());
  for (double q : {2.0, 4.0, 6.0}) {
    const double expected = exactstats::torus_profile_integral(
        q, static_cast<std::int64_t>(cluster.dimension()), sub.volume(), 4 * kPi * kPi);
    EXPECT_NEAR(pointwise_norm_integral(cluster, rule, q) / expected, 1.0, 1e-12);
  }
}

TEST(Restriction, FftPathMatchesDirectEvaluation) {
  const auto cluster = spectral::enumerate_cluster(Manifold::flat_torus(2), {1.0, 6.0}, 0.05);
  curves::SubmanifoldSpec spec;
  spec.direction = {1.0, 2.0, 0.0};
  spec.base = {0.3, 0.2, 0.0};
  const auto sub = curves::build_submanifold(Manifold::flat_torus(2), spec);
  const auto rule = curves::quadrature(sub, cluster.max_frequency());
  const RestrictionOperator op(cluster, sub, rule);
  ASSERT_TRUE(op.uses_fft());
  const auto sample = sample_coefficients(cluster.dimension(), 4, 2);
  std::vector<std::complex<double>> values(op.node_count());
  RestrictionOperator::Workspace ws;
  op.apply(sample.z, values, ws);
  for (std::size_t j = 0; j < rule.size(); ++j) {
    EXPECT_NEAR(std::abs(values[j] - field_eval(cluster, sample.z, rule.nodes[j])), 0.0, 1e-12);
  }
}

TEST(Restriction, AdjointIdentityOnBothPaths) {
  const auto cluster = spectral::enumerate_cluster(Manifold::flat_torus(2), {1.0, 6.0}, 0.1);
  curves::SubmanifoldSpec closed;
  curves::SubmanifoldSpec open;
  open.closed = false;
  open.direction = {1.0, 0.37, 0.0};
  open.length = 3.0;
  for (const auto& spec : {closed, open}) {
    const auto sub = curves::build_submanifold(Manifold::flat_torus(2), spec);
    const auto rule = curves::quadrature(sub, cluster.max_frequency());
    const RestrictionOperator op(cluster, sub, rule);
    EXPECT_EQ(op.uses_fft(), spec.closed);
    const auto z = sample_coefficients(op.mode_count(), 1, 0).z;
    const auto v = sample_coefficients(op.node_count(), 2, 0).z;
    std::vector<std::complex<double>> phi_z(op.node_count());
    std::vector<std::complex<double>> phi_star_v(op.mode_count());
    RestrictionOperator::Workspace ws;
    op.apply(z, phi_z, ws);
    op.apply_adjoint(v, phi_star_v, ws);
    std::complex<double> lhs{0.0, 0.0};
    std::complex<double> rhs{0.0, 0.0};
    for (std::size_t j = 0; j < v.size(); ++j) lhs += phi_z[j] * std::conj(v[j]);
    for (std::size_t k = 0; k < z.size(); ++k) rhs += z[k] * std::conj(phi_star_v[k]);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
  }
}

TEST(Restriction, L2OperatorNormMatchesLargestFibre) {
  const auto cluster = spectral::enumerate_cluster(Manifold::flat_torus(2), {1.0, 6.0}, 0.05);
  const auto sub = horizontal_circle();
  const auto rule = curves::quadrature(sub, cluster.max_frequency());
  const RestrictionOperator op(cluster, sub, rule);
  std::map<int, int> fibres;
  for (const auto& mode : cluster.modes) ++fibres[mode.label[0]];
  int largest = 0;
  for (const auto& [k1, count] : fibres) largest = std::max(largest, count);
  const double expected = std::sqrt(largest / (2 * kPi));
  EXPECT_NEAR(restriction_norm_estimate(op, 2.0, 99) / expected, 1.0, 1e-6);
}

TEST(Restriction, LipschitzRatioScalesWithDeltaExponent) {
  const auto sub = horizontal_circle();
  for (double q : {4.0, 6.0}) {
    std::vector<double> scaled;
    for (double inv_h : {20.0, 40.0, 80.0}) {
      const auto cluster =
          spectral::enumerate_cluster(Manifold::flat_torus(2), {1.0, 6.0}, 1.0 / inv_h);
      const auto rule = curves::quadrature(sub, cluster.max_frequency());
      const RestrictionOperator op(cluster, sub, rule);
      const double bound = std::pow(pointwise_norm_integral(cluster, rule, q), 1.0 / q);
      RestrictionOperator::Workspace ws;
      std::vector<std::complex<double>> vu(op.node_count());
      std::vector<std::complex<double>> vv(op.node_count());
      double ratio = 0.0;
      for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto u = sample_coefficients(op.mode_count(), 77, 2 * i).z;
        const auto v = sample_coefficients(op.mode_count(), 77, 2 * i + 1).z;
        op.apply(u, vu, ws);
        op.apply(v, vv, ws);
        std::vector<std::complex<double>> diff(u.size());
        for (std::size_t k = 0; k < u.size(); ++k) diff[k] = u[k] - v[k];
        const double gap = std::abs(lq_norm(vu, op.weights(), q) - lq_norm(vv, op.weights(), q));
        const double r = gap / vector_norm(diff);
        EXPECT_LE(r, bound * (1.0 + 1e-12));
        ratio = std::max(ratio, r);
      }
      scaled.push_back(ratio * std::pow(1.0 / inv_h, exactstats::delta_exponent(q)));
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    EXPECT_LE(*hi / *lo, 4.0) << "q=" << q;
  }
}

}  // namespace
}  // namespace wavestat::ensemble
