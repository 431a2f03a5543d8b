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

#include "curves.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "error.hpp"
#include "numeric.hpp"

namespace wavestat::curves {
namespace {

double norm3(const std::array<double, 3>& v, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += v[i] * v[i];
  return std::sqrt(s);
}

bool is_integer(double x) { return std::abs(x - std::round(x)) <= 1e-12 * std::max(1.0, std::abs(x)); }

void validate_torus_line(const SubmanifoldSpec& spec, int n, double& volume,
                         std::array<double, 3>& unit, std::array<int, 3>& integer_dir) {
  const double dir_norm = norm3(spec.direction, n);
  if (!(dir_norm > 0.0) || !std::isfinite(dir_norm)) {
    throw Error(ErrorCode::kInvalidDirection, "torus line direction must be nonzero");
  }
  for (int i = 0; i < n; ++i) unit[i] = spec.direction[i] / dir_norm;
  if (spec.closed) {
    int g = 0;
    for (int i = 0; i < n; ++i) {
      if (!is_integer(spec.direction[i])) {
        throw Error(ErrorCode::kInvalidDirection,
                    "closed torus line needs an integer direction vector");
      }
      integer_dir[i] = static_cast<int>(std::lround(spec.direction[i]));
      g = std::gcd(g, std::abs(integer_dir[i]));
    }
    if (g != 1) {
      throw Error(ErrorCode::kInvalidDirection,
                  "closed torus line direction must be primitive (gcd 1), gcd is " +
                      std::to_string(g));
    }
    volume = kTwoPi * dir_norm;
    if (spec.length < 0.0 ||
        (spec.length > 0.0 && std::abs(spec.length - volume) > 1e-9 * volume)) {
      throw Error(ErrorCode::kInvalidLength,
                  "closed torus line length must equal 2π|direction| = " + std::to_string(volume));
    }
  } else {
    if (!(spec.length > 0.0) || !std::isfinite(spec.length)) {
      throw Error(ErrorCode::kInvalidLength, "torus segment length must be positive");
    }
    volume = spec.length;
  }
}

}  // namespace

Submanifold build_submanifold(const spectral::Manifold& manifold, const SubmanifoldSpec& spec) {
  Submanifold sub(manifold, spec);
  const int n = manifold.dimension();
  switch (spec.kind) {
    case SubmanifoldKind::kTorusLine: {
      if (!manifold.is_torus()) {
        throw Error(ErrorCode::kInvalidArgument, "torus line requires a flat torus");
      }
      validate_torus_line(spec, n, sub.volume_, sub.unit_direction_,
                          sub.integer_direction_);
      sub.dimension_ = 1;
      sub.spec_.length = sub.volume_;
      break;
    }
    case SubmanifoldKind::kTorusSubtorus: {
      if (!manifold.is_torus()) {
        throw Error(ErrorCode::kInvalidArgument, "coordinate subtorus requires a flat torus");
      }
      if (!spec.closed) {
        throw Error(ErrorCode::kInvalidArgument, "coordinate subtori are always closed");
      }
      std::vector<bool> is_fixed(n, false);
      for (const auto& f : spec.fixed) {
        if (f.axis < 0 || f.axis >= n || is_fixed[f.axis]) {
          throw Error(ErrorCode::kInvalidArgument,
                      "subtorus fixed axes must be distinct and within the torus dimension");
        }
        is_fixed[f.axis] = true;
      }
      const int fixed = static_cast<int>(spec.fixed.size());
      if (fixed < 1 || fixed > n - 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "subtorus must fix between 1 and n-1 coordinates");
      }
      for (int i = 0; i < n; ++i) {
        if (!is_fixed[i]) sub.free_axes_.push_back(i);
      }
      sub.dimension_ = n - fixed;
      sub.volume_ = std::pow(kTwoPi, sub.dimension_);
      break;
    }
    case SubmanifoldKind::kSphereGreatArc: {
      if (manifold.is_torus()) {
        throw Error(ErrorCode::kInvalidArgument, "great arc requires the round sphere");
      }
      const double n1 = norm3(spec.e1, 3);
      const double n2 = norm3(spec.e2, 3);
      const double dot = spec.e1[0] * spec.e2[0] + spec.e1[1] * spec.e2[1] + spec.e1[2] * spec.e2[2];
      if (std::abs(n1 - 1.0) > 1e-9 || std::abs(n2 - 1.0) > 1e-9 || std::abs(dot) > 1e-9) {
        throw Error(ErrorCode::kInvalidDirection, "great arc frame must be orthonormal");
      }
      double length = spec.length;
      if (spec.closed) {
        if (length != 0.0 && std::abs(length - kTwoPi) > 1e-12) {
          throw Error(ErrorCode::kInvalidLength, "closed great circle has length 2π");
        }
        length = kTwoPi;
      } else if (!(length > 0.0) || length > kTwoPi) {
        throw Error(ErrorCode::kInvalidLength, "great arc length must lie in (0, 2π]");
      }
      sub.spec_.length = length;
      sub.volume_ = length;
      sub.dimension_ = 1;
      break;
    }
    case SubmanifoldKind::kSphereLatitudeCircle: {
      if (manifold.is_torus()) {
        throw Error(ErrorCode::kInvalidArgument, "latitude circle requires the round sphere");
      }
      if (!(spec.colatitude > 0.0 && spec.colatitude < kPi)) {
        throw Error(ErrorCode::kInvalidArgument, "latitude colatitude must lie in (0, π)");
      }
      if (!spec.closed) {
        throw Error(ErrorCode::kInvalidArgument, "latitude circles are always closed");
      }
      sub.volume_ = kTwoPi * std::sin(spec.colatitude);
      sub.spec_.length = sub.volume_;
      sub.dimension_ = 1;
      break;
    }
  }
  return sub;
}

spectral::Point Submanifold::point_at(double s, double s2) const {
  spectral::Point p;
  switch (spec_.kind) {
    case SubmanifoldKind::kTorusLine:
      for (int i = 0; i < manifold_.dimension(); ++i) {
        p.coords[i] = spec_.base[i] + s * unit_direction_[i];
      }
      break;
    case SubmanifoldKind::kTorusSubtorus:
      for (const auto& f : spec_.fixed) p.coords[f.axis] = f.value;
      p.coords[free_axes_[0]] = s;
      if (free_axes_.size() > 1) p.coords[free_axes_[1]] = s2;
      break;
    case SubmanifoldKind::kSphereGreatArc: {
      const double t = spec_.start + s;
      const double c = std::cos(t);
      const double sn = std::sin(t);
      const double x = c * spec_.e1[0] + sn * spec_.e2[0];
      const double y = c * spec_.e1[1] + sn * spec_.e2[1];
      const double z = c * spec_.e1[2] + sn * spec_.e2[2];
      p.coords[0] = std::atan2(std::hypot(x, y), z);
      p.coords[1] = std::atan2(y, x);
      break;
    }
    case SubmanifoldKind::kSphereLatitudeCircle:
      p.coords[0] = spec_.colatitude;
      p.coords[1] = s / std::sin(spec_.colatitude);
      break;
  }
  return p;
}

std::int64_t nyquist_node_count(double length, double max_frequency) {
  const double wavelengths = 4.0 * length * std::max(max_frequency, 0.0) / kTwoPi;
  const auto blocks = static_cast<std::int64_t>(std::ceil(wavelengths * (1.0 - 1e-12)));
  return std::max<std::int64_t>(64, blocks * 8);
}

void gauss_legendre(std::int64_t n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const std::int64_t half = (n + 1) / 2;
  for (std::int64_t i = 0; i < half; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::int64_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::int64_t k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

QuadratureRule quadrature_with_count(const Submanifold& submanifold, std::int64_t per_axis) {
  if (per_axis < 1) {
    throw Error(ErrorCode::kInvalidArgument, "quadrature needs at least one node per axis");
  }
  QuadratureRule rule;
  rule.per_axis = per_axis;
  if (submanifold.dimension() == 2) {
    rule.uniform = true;
    const double step = kTwoPi / static_cast<double>(per_axis);
    const double w = step * step;
    for (std::int64_t i = 0; i < per_axis; ++i) {
      for (std::int64_t j = 0; j < per_axis; ++j) {
        const double s1 = step * static_cast<double>(i);
        const double s2 = step * static_cast<double>(j);
        rule.params.push_back({s1, s2});
        rule.nodes.push_back(submanifold.point_at(s1, s2));
        rule.weights.push_back(w);
      }
    }
    return rule;
  }
  const double length = submanifold.volume();
  if (submanifold.closed()) {
    rule.uniform = true;
    const double w = length / static_cast<double>(per_axis);
    for (std::int64_t j = 0; j < per_axis; ++j) {
      const double s = length * static_cast<double>(j) / static_cast<double>(per_axis);
      rule.params.push_back({s, 0.0});
      rule.nodes.push_back(submanifold.point_at(s));
      rule.weights.push_back(w);
    }
    return rule;
  }
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(per_axis, x, w);
  for (std::int64_t j = 0; j < per_axis; ++j) {
    const double s = 0.5 * length * (x[j] + 1.0);
    rule.params.push_back({s, 0.0});
    rule.nodes.push_back(submanifold.point_at(s));
    rule.weights.push_back(0.5 * length * w[j]);
  }
  return rule;
}

QuadratureRule quadrature(const Submanifold& submanifold, double max_frequency) {
  const double axis_length = submanifold.dimension() == 2 ? kTwoPi : submanifold.volume();
  return quadrature_with_count(submanifold, nyquist_node_count(axis_length, max_frequency));
}

}  // namespace wavestat::curves
