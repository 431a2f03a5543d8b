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
#include <string>
#include <vector>

#include "curves.hpp"
#include "spectral.hpp"

namespace wavestat::experiments {

inline constexpr int kSchemaVersion = 1;

struct ExperimentConfig {
  spectral::Manifold manifold = spectral::Manifold::flat_torus(2);
  spectral::SpectralWindow window;
  std::vector<double> h{0.1};
  curves::SubmanifoldSpec submanifold;
  std::vector<double> p{1.0, 2.0, 3.0};
  std::vector<double> q{2.0, 4.0, 6.0};
  std::int64_t samples = 100000;
  std::int64_t lq_samples = 10000;
  std::uint64_t seed = 7;
  int workers = 1;
  int lambda_grid = 50;
  int r_grid = 20;
  int lipschitz_pairs = 1000;
  double corrupt_ns_factor = 2.0;
  double kuznecov_h_min = 0.002;
  int kuznecov_points = 16;
  std::int64_t sweep_mc_samples = 0;
  /// h list of the scaling sweep; independent of `h` so that single-h
  /// configs can still run the sweep.
  std::vector<double> sweep_h{1.0 / 20, 1.0 / 40, 1.0 / 80, 1.0 / 160, 1.0 / 320};

  /// Throws Error(kConfigError) on any out-of-range field.
  void validate() const;
};

/// Parses a config document. Unknown keys at any level are rejected.
ExperimentConfig parse_config(const std::string& json_text);

/// Canonical JSON with a fixed key order; parse_config(config_to_json(c))
/// reproduces c.
std::string config_to_json(const ExperimentConfig& config);

/// The "submanifold" object of the schema, standalone.
curves::SubmanifoldSpec parse_submanifold(const std::string& json_text,
                                          const spectral::Manifold& manifold);

spectral::Manifold parse_manifold_name(const std::string& name);

}  // namespace wavestat::experiments
