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

#include <array>
#include <cstdint>
#include <vector>

#include "spectral.hpp"

namespace wavestat::curves {

enum class SubmanifoldKind {
  kTorusLine,
  kTorusSubtorus,
  kSphereGreatArc,
  kSphereLatitudeCircle,
};

struct FixedCoordinate {
  int axis = 0;
  double value = 0.0;
};

/// User-facing description of a curve or coordinate subtorus. Only the
/// fields relevant to `kind` are read.
struct SubmanifoldSpec {
  SubmanifoldKind kind = SubmanifoldKind::kTorusLine;
  bool closed = true;

  // kTorusLine. A closed line needs a primitive integer direction; its length
  // is implied. An open segment takes any nonzero direction and a length.
  std::array<double, 3> base{};
  std::array<double, 3> direction{1.0, 0.0, 0.0};
  double length = 0.0;

  // kTorusSubtorus
  std::vector<FixedCoordinate> fixed;

  // kSphereGreatArc: p(t) = cos(start + t) e1 + sin(start + t) e2, t in [0, length].
  std::array<double, 3> e1{0.0, 0.0, 1.0};
  std::array<double, 3> e2{1.0, 0.0, 0.0};
  double start = 0.0;

  // kSphereLatitudeCircle
  double colatitude = 1.5707963267948966;
};

/// A validated submanifold with closed-form volume and an arclength (or
/// coordinate) parametrisation.
class Submanifold {
 public:
  const spectral::Manifold& manifold() const noexcept { return manifold_; }
  const SubmanifoldSpec& spec() const noexcept { return spec_; }
  SubmanifoldKind kind() const noexcept { return spec_.kind; }
  int dimension() const noexcept { return dimension_; }
  bool closed() const noexcept { return spec_.closed; }
  /// Length (d = 1) or area (d = 2).
  double volume() const noexcept { return volume_; }

  /// Unit direction of a torus line.
  const std::array<double, 3>& unit_direction() const noexcept { return unit_direction_; }
  /// Integer direction of a closed torus line.
  const std::array<int, 3>& integer_direction() const noexcept { return integer_direction_; }
  /// Free coordinate axes of a subtorus.
  const std::vector<int>& free_axes() const noexcept { return free_axes_; }

  /// Point at parameter (s) for curves or (s1, s2) for 2-subtori.
  spectral::Point point_at(double s, double s2 = 0.0) const;

 private:
  friend Submanifold build_submanifold(const spectral::Manifold&, const SubmanifoldSpec&);
  Submanifold(const spectral::Manifold& manifold, SubmanifoldSpec spec)
      : manifold_(manifold), spec_(std::move(spec)) {}

  spectral::Manifold manifold_;
  SubmanifoldSpec spec_;
  int dimension_ = 1;
  double volume_ = 0.0;
  std::array<double, 3> unit_direction_{};
  std::array<int, 3> integer_direction_{};
  std::vector<int> free_axes_;
};

/// Validates a submanifold description against its manifold. Throws kInvalidDirection or
/// kInvalidLength for malformed curves and kInvalidArgument otherwise.
Submanifold build_submanifold(const spectral::Manifold& manifold, const SubmanifoldSpec& spec);

struct QuadratureRule {
  std::vector<std::array<double, 2>> params;
  std::vector<spectral::Point> nodes;
  std::vector<double> weights;
  /// Nodes per parameter direction.
  std::int64_t per_axis = 0;
  bool uniform = false;

  std::size_t size() const noexcept { return weights.size(); }
};

/// Node count per axis: max(64, ceil(4 L f / 2π) * 8).
std::int64_t nyquist_node_count(double length, double max_frequency);

/// Trapezoidal for closed curves and subtori, Gauss-Legendre for open arcs,
/// sized by nyquist_node_count.
QuadratureRule quadrature(const Submanifold& submanifold, double max_frequency);

/// Same rule family with an explicit per-axis node count.
QuadratureRule quadrature_with_count(const Submanifold& submanifold, std::int64_t per_axis);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(std::int64_t n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace wavestat::curves
