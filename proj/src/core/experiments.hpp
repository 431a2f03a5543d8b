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
#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace wavestat::experiments {

struct MomentReport {
  double h = 0.0;
  double p = 0.0;
  double exact = 0.0;
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  std::int64_t sample_count = 0;
  double z_score = 0.0;  // (mc_mean - exact) / mc_stderr; 0 when both agree exactly
  std::int64_t modes = 0;
  double period_norm_sq = 0.0;
};

struct TailReport {
  double h = 0.0;
  std::int64_t modes = 0;
  double period_norm_sq = 0.0;
  std::vector<double> lambda;
  std::vector<double> empirical_survival;
  std::vector<double> exact_survival;
  double ks_distance = 0.0;
  double ks_threshold = 0.0;
  /// KS distance against the law with N(S)_h scaled by corrupt_ns_factor.
  double corrupted_ks_distance = 0.0;
  std::int64_t sample_count = 0;
};

struct ScalingReport {
  std::vector<double> h;
  std::vector<std::int64_t> modes;
  std::vector<double> period_norm_sq;
  std::vector<double> value;      // exact A_{1,h}
  std::vector<double> mc_median;  // empty unless sweep_mc_samples > 0
  double slope = 0.0;
  double slope_lower = 0.0;  // 95% Student-t interval
  double slope_upper = 0.0;
  double expected_slope = 0.0;
  double tolerance = 0.0;
};

/// Samples F_1 = |Σ z_k b_k| for indices 0..count-1; output is independent
/// of the worker count.
std::vector<double> sample_period_rv(const std::vector<std::complex<double>>& periods,
                                     std::int64_t count, std::uint64_t seed, int workers);

std::vector<MomentReport> moment_reports(const ExperimentConfig& config);
TailReport tail_report(const ExperimentConfig& config);
ScalingReport scaling_report(const ExperimentConfig& config);

Report run_modes(const ExperimentConfig& config);
Report run_period(const ExperimentConfig& config);
Report run_moments(const ExperimentConfig& config);
Report run_tail(const ExperimentConfig& config);
Report run_concentration(const ExperimentConfig& config);
Report run_scaling_sweep(const ExperimentConfig& config);
Report run_lq_medians(const ExperimentConfig& config);
Report run_deterministic_examples();

/// Dispatch by CLI subcommand name: modes, period, moments, tail,
/// concentration, sweep, lq, det-examples. Throws kInvalidArgument for
/// anything else.
Report run_named(const std::string& name, const ExperimentConfig& config);

/// Names accepted by run_named, in the order "all" runs them.
const std::vector<std::string>& experiment_names();

}  // namespace wavestat::experiments
