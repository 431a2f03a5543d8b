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
#include <string>
#include <variant>

#include "error.hpp"
#include "experiments.hpp"
#include "periods.hpp"
#include "spectral.hpp"

namespace wavestat::experiments {
namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.samples = 2000;
  c.lq_samples = 500;
  c.lipschitz_pairs = 100;
  return c;
}

const Table& find_table(const Report& report, const std::string& name) {
  for (const auto& t : report.tables) {
    if (t.name == name) return t;
  }
  throw std::runtime_error("no table " + name);
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (t.columns[i] == name) return i;
  }
  throw std::runtime_error("no column " + name);
}

TEST(Experiments, ZeroMomentIsDegenerate) {
  auto c = small_config();
  c.p = {0.0};
  c.samples = 100;
  const auto reports = moment_reports(c);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_EQ(reports[0].exact, 1.0);
  EXPECT_EQ(reports[0].mc_mean, 1.0);
  EXPECT_EQ(reports[0].z_score, 0.0);
}

TEST(Experiments, MomentReportFields) {
  const auto c = small_config();
  const auto reports = moment_reports(c);
  ASSERT_EQ(reports.size(), 3u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.sample_count, 2000);
    EXPECT_DOUBLE_EQ(r.period_norm_sq, 12.0);
    EXPECT_NEAR(r.z_score, (r.mc_mean - r.exact) / r.mc_stderr, 1e-12);
  }
  EXPECT_NEAR(reports[1].exact, 12.0 / static_cast<double>(reports[1].modes), 1e-15);
}

TEST(Experiments, SmokeTailThreshold) {
  auto c = small_config();
  c.samples = 100;
  const auto tail = tail_report(c);
  EXPECT_NEAR(tail.ks_threshold, 0.163, 1e-15);
  EXPECT_EQ(tail.lambda.size(), 50u);
  EXPECT_EQ(tail.empirical_survival.size(), tail.lambda.size());
  EXPECT_EQ(tail.exact_survival.size(), tail.lambda.size());
}

TEST(Experiments, WorkerCountNeverChangesResults) {
  auto one = small_config();
  auto many = small_config();
  many.workers = 8;
  const auto a = moment_reports(one);
  const auto b = moment_reports(many);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].mc_mean, b[i].mc_mean);
    EXPECT_EQ(a[i].mc_stderr, b[i].mc_stderr);
  }
  const auto cluster = spectral::enumerate_cluster(one.manifold, one.window, 0.1);
  const auto pv = periods::period_vector(cluster, curves::build_submanifold(one.manifold, one.submanifold));
  EXPECT_EQ(sample_period_rv(pv.components, 1001, 5, 1), sample_period_rv(pv.components, 1001, 5, 7));
  const auto lq_a = run_lq_medians(one);
  const auto lq_b = run_lq_medians(many);
  EXPECT_EQ(find_table(lq_a, "lq").rows, find_table(lq_b, "lq").rows);
}

TEST(Experiments, ExceedanceVanishesAtTheCap) {
  auto c = small_config();
  c.q = {2.0};
  const auto report = run_concentration(c);
  const auto& t = find_table(report, "concentration_period");
  ASSERT_EQ(t.rows.size(), 20u);
  EXPECT_EQ(std::get<double>(t.rows.back()[column(t, "exceedance")]), 0.0);
  EXPECT_NEAR(std::get<double>(t.rows.back()[column(t, "r")]), std::sqrt(12.0), 1e-14);
}

TEST(Experiments, StandardSweepSlope) {
  const auto r = scaling_report(ExperimentConfig{});
  EXPECT_EQ(r.h.size(), 5u);
  EXPECT_NEAR(r.slope, 0.5, 0.1);
  EXPECT_DOUBLE_EQ(r.expected_slope, 0.5);
  EXPECT_LE(r.slope_lower, r.slope);
  EXPECT_GE(r.slope_upper, r.slope);
}

TEST(Experiments, DeterministicExamplesPass) {
  const auto report = run_deterministic_examples();
  for (const auto& check : report.checks) EXPECT_TRUE(check.passed) << check.name;
  const auto& segment = find_table(report, "det_segment");
  for (const auto& row : segment.rows) {
    const double n = static_cast<double>(std::get<std::int64_t>(row[column(segment, "n")]));
    const double value = std::get<double>(row[column(segment, "period")]);
    EXPECT_NEAR(value, std::abs(std::polar(1.0, n) - 1.0) / n, 1e-12);
  }
}

TEST(Experiments, EmptyClusterPropagates) {
  auto c = small_config();
  c.manifold = spectral::Manifold::round_sphere();
  c.submanifold.kind = curves::SubmanifoldKind::kSphereLatitudeCircle;
  c.window.width = 0.4;
  try {
    (void)run_moments(c);
    FAIL() << "expected EmptyCluster";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCluster);
  }
}

TEST(Experiments, UnknownExperimentRejected) {
  EXPECT_THROW((void)run_named("nonsense", ExperimentConfig{}), Error);
  EXPECT_EQ(experiment_names().size(), 8u);
}

}  // namespace
}  // namespace wavestat::experiments
