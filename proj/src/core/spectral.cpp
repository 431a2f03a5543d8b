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

#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "numeric.hpp"

namespace wavestat::spectral {
namespace {

// Largest r >= 0 with r^2 <= x, for x >= 0.
std::int64_t isqrt_floor(double x) noexcept {
  auto r = static_cast<std::int64_t>(std::floor(std::sqrt(x)));
  while (static_cast<double>((r + 1) * (r + 1)) <= x) ++r;
  while (r > 0 && static_cast<double>(r * r) > x) --r;
  return r;
}

void validate_h(double h) {
  if (!(h > 0.0 && h <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "h must lie in (0, 1], got " + std::to_string(h));
  }
}

// Visits every lattice vector k in Z^n with lower_sq < |k|^2 <= upper_sq.
template <typename Visit>
void visit_torus_shell(int n, double lower_sq, double upper_sq, Visit&& visit) {
  if (upper_sq < 0.0) return;
  const std::int64_t radius = isqrt_floor(upper_sq);
  auto last_coordinate = [&](std::array<int, 3> k, std::int64_t partial, int slot) {
    const double hi = upper_sq - static_cast<double>(partial);
    if (hi < 0.0) return;
    const std::int64_t m_max = isqrt_floor(hi);
    const double lo = lower_sq - static_cast<double>(partial);
    const std::int64_t m_min = lo < 0.0 ? 0 : isqrt_floor(lo) + 1;
    const std::int64_t first_nonzero = std::max<std::int64_t>(m_min, 1);
    for (std::int64_t m = -m_max; m <= -first_nonzero; ++m) {
      k[slot] = static_cast<int>(m);
      visit(k, partial + m * m);
    }
    if (m_min == 0) {
      k[slot] = 0;
      visit(k, partial);
    }
    for (std::int64_t m = first_nonzero; m <= m_max; ++m) {
      k[slot] = static_cast<int>(m);
      visit(k, partial + m * m);
    }
  };
  for (std::int64_t k0 = -radius; k0 <= radius; ++k0) {
    std::array<int, 3> k{static_cast<int>(k0), 0, 0};
    if (n == 2) {
      last_coordinate(k, k0 * k0, 1);
      continue;
    }
    for (std::int64_t k1 = -radius; k1 <= radius; ++k1) {
      const std::int64_t partial = k0 * k0 + k1 * k1;
      if (static_cast<double>(partial) > upper_sq) continue;
      k[1] = static_cast<int>(k1);
      last_coordinate(k, partial, 2);
    }
  }
}

}  // namespace

Manifold Manifold::flat_torus(int dimension) {
  if (dimension == 2) return Manifold(ManifoldKind::kFlatTorus2);
  if (dimension == 3) return Manifold(ManifoldKind::kFlatTorus3);
  throw Error(ErrorCode::kInvalidArgument,
              "flat torus dimension must be 2 or 3, got " + std::to_string(dimension));
}

Manifold Manifold::round_sphere() { return Manifold(ManifoldKind::kRoundSphere2); }

int Manifold::dimension() const noexcept { return kind_ == ManifoldKind::kFlatTorus3 ? 3 : 2; }

double Manifold::volume() const noexcept {
  switch (kind_) {
    case ManifoldKind::kFlatTorus2:
      return kTwoPi * kTwoPi;
    case ManifoldKind::kFlatTorus3:
      return kTwoPi * kTwoPi * kTwoPi;
    case ManifoldKind::kRoundSphere2:
      return 4.0 * kPi;
  }
  return 0.0;
}

std::string Manifold::name() const {
  switch (kind_) {
    case ManifoldKind::kFlatTorus2:
      return "torus2";
    case ManifoldKind::kFlatTorus3:
      return "torus3";
    case ManifoldKind::kRoundSphere2:
      return "sphere2";
  }
  return "unknown";
}

double EigenMode::frequency() const noexcept {
  return std::sqrt(static_cast<double>(frequency_squared));
}

bool canonical_less(const EigenMode& lhs, const EigenMode& rhs) noexcept {
  if (lhs.frequency_squared != rhs.frequency_squared) {
    return lhs.frequency_squared < rhs.frequency_squared;
  }
  return lhs.label < rhs.label;
}

std::string mode_label(const Manifold& manifold, const EigenMode& mode) {
  std::ostringstream out;
  out << '(' << mode.label[0] << ' ' << mode.label[1];
  if (manifold.kind() == ManifoldKind::kFlatTorus3) out << ' ' << mode.label[2];
  out << ')';
  return out.str();
}

void SpectralWindow::validate() const {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw Error(ErrorCode::kInvalidArgument, "window width D must be positive");
  }
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw Error(ErrorCode::kInvalidArgument, "window lower scale a must be nonnegative");
  }
}

double snap_square(double x) noexcept {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) return nearest;
  return x;
}

FrequencyBounds frequency_bounds(const SpectralWindow& window, double h) {
  FrequencyBounds b;
  b.lower = window.a / h;
  b.upper = b.lower + window.width;
  b.lower_squared = snap_square(b.lower * b.lower);
  b.upper_squared = snap_square(b.upper * b.upper);
  return b;
}

double Cluster::max_frequency() const noexcept { return window.a / h + window.width; }

Cluster enumerate_cluster(const Manifold& manifold, const SpectralWindow& window, double h) {
  validate_h(h);
  window.validate();
  const FrequencyBounds bounds = frequency_bounds(window, h);
  Cluster cluster;
  cluster.manifold = manifold;
  cluster.window = window;
  cluster.h = h;
  if (manifold.is_torus()) {
    visit_torus_shell(manifold.dimension(), bounds.lower_squared, bounds.upper_squared,
                      [&](const std::array<int, 3>& k, std::int64_t fsq) {
                        cluster.modes.push_back(EigenMode{k, fsq});
                      });
  } else {
    for (std::int64_t l = 0; static_cast<double>(l * (l + 1)) <= bounds.upper_squared; ++l) {
      if (!bounds.contains(l * (l + 1))) continue;
      for (std::int64_t m = -l; m <= l; ++m) {
        cluster.modes.push_back(
            EigenMode{{static_cast<int>(l), static_cast<int>(m), 0}, l * (l + 1)});
      }
    }
  }
  if (cluster.modes.empty()) {
    std::ostringstream msg;
    msg << "empty cluster on " << manifold.name() << ": no eigenvalue with frequency in ("
        << bounds.lower << ", " << bounds.upper << "] (a=" << window.a << ", D=" << window.width
        << ", h=" << h << ")";
    throw Error(ErrorCode::kEmptyCluster, msg.str());
  }
  std::sort(cluster.modes.begin(), cluster.modes.end(), canonical_less);
  return cluster;
}

std::int64_t count_squares_at_most(double x) noexcept {
  if (x < 0.0) return 0;
  return 2 * isqrt_floor(x) + 1;
}

std::int64_t count_cluster(const Manifold& manifold, const SpectralWindow& window, double h) {
  validate_h(h);
  window.validate();
  const FrequencyBounds bounds = frequency_bounds(window, h);
  std::int64_t count = 0;
  if (manifold.kind() == ManifoldKind::kRoundSphere2) {
    for (std::int64_t l = 0; static_cast<double>(l * (l + 1)) <= bounds.upper_squared; ++l) {
      if (bounds.contains(l * (l + 1))) count += 2 * l + 1;
    }
    return count;
  }
  const std::int64_t radius = isqrt_floor(bounds.upper_squared);
  auto shell_count = [&](std::int64_t partial) {
    const auto p = static_cast<double>(partial);
    return count_squares_at_most(bounds.upper_squared - p) -
           count_squares_at_most(bounds.lower_squared - p);
  };
  for (std::int64_t k0 = -radius; k0 <= radius; ++k0) {
    if (manifold.dimension() == 2) {
      count += shell_count(k0 * k0);
      continue;
    }
    for (std::int64_t k1 = -radius; k1 <= radius; ++k1) {
      count += shell_count(k0 * k0 + k1 * k1);
    }
  }
  return count;
}

std::vector<EigenMode> enumerate_modes_up_to(const Manifold& manifold,
                                             double max_frequency_squared) {
  std::vector<EigenMode> modes;
  if (manifold.is_torus()) {
    visit_torus_shell(manifold.dimension(), -1.0, max_frequency_squared,
                      [&](const std::array<int, 3>& k, std::int64_t fsq) {
                        modes.push_back(EigenMode{k, fsq});
                      });
  } else {
    for (std::int64_t l = 0; static_cast<double>(l * (l + 1)) <= max_frequency_squared; ++l) {
      for (std::int64_t m = -l; m <= l; ++m) {
        modes.push_back(EigenMode{{static_cast<int>(l), static_cast<int>(m), 0}, l * (l + 1)});
      }
    }
  }
  std::sort(modes.begin(), modes.end(), canonical_less);
  return modes;
}

double unit_ball_volume(int n) {
  switch (n) {
    case 1:
      return 2.0;
    case 2:
      return kPi;
    case 3:
      return 4.0 * kPi / 3.0;
    default:
      return std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
  }
}

double weyl_prediction(const Manifold& manifold, const SpectralWindow& window, double h) {
  validate_h(h);
  window.validate();
  const int n = manifold.dimension();
  const double lower = window.a / h;
  const double upper = lower + window.width;
  return unit_ball_volume(n) * manifold.volume() / std::pow(kTwoPi, n) *
         (std::pow(upper, n) - std::pow(lower, n));
}

std::complex<double> torus_mode(const Manifold& manifold, const std::array<int, 3>& k,
                                const Point& x) {
  double phase = 0.0;
  for (int i = 0; i < manifold.dimension(); ++i) phase += k[i] * x.coords[i];
  return std::polar(1.0 / std::sqrt(manifold.volume()), phase);
}

LegendreTable::LegendreTable(int l_max, double colatitude)
    : l_max_(l_max), values_(index(l_max, l_max) + 1, 0.0) {
  const double x = std::cos(colatitude);
  const double s = std::sin(colatitude);
  values_[0] = 1.0 / std::sqrt(4.0 * kPi);
  for (int m = 0; m <= l_max; ++m) {
    if (m > 0) {
      values_[index(m, m)] =
          -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * values_[index(m - 1, m - 1)];
    }
    if (m + 1 <= l_max) {
      values_[index(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * x * values_[index(m, m)];
    }
    double a_prev = std::sqrt((4.0 * (m + 1) * (m + 1) - 1.0) /
                              (static_cast<double>(m + 1) * (m + 1) - static_cast<double>(m) * m));
    for (int l = m + 2; l <= l_max; ++l) {
      const double a_l = std::sqrt((4.0 * l * l - 1.0) /
                                   (static_cast<double>(l) * l - static_cast<double>(m) * m));
      values_[index(l, m)] =
          a_l * (x * values_[index(l - 1, m)] - values_[index(l - 2, m)] / a_prev);
      a_prev = a_l;
    }
  }
}

std::complex<double> spherical_harmonic(int l, int m, double colatitude, double longitude) {
  if (l < 0 || std::abs(m) > l) {
    throw Error(ErrorCode::kInvalidArgument, "spherical harmonic requires |m| <= l");
  }
  const LegendreTable table(l, colatitude);
  const int am = std::abs(m);
  const std::complex<double> y = std::polar(table.value(l, am), am * longitude);
  if (m >= 0) return y;
  return (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
}

double zonal_harmonic(int l, double cos_colatitude) {
  const double x = cos_colatitude;
  double p_prev = 1.0 / std::sqrt(4.0 * kPi);
  if (l == 0) return p_prev;
  double p = std::sqrt(3.0) * x * p_prev;
  double a_prev = std::sqrt(3.0);
  for (int k = 2; k <= l; ++k) {
    const double a_k = std::sqrt((4.0 * k * k - 1.0) / (static_cast<double>(k) * k));
    const double next = a_k * (x * p - p_prev / a_prev);
    p_prev = p;
    p = next;
    a_prev = a_k;
  }
  return p;
}

void evaluate_modes_at_point(const Cluster& cluster, const Point& x,
                             std::span<std::complex<double>> out) {
  if (out.size() != cluster.dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "output span does not match cluster dimension");
  }
  if (cluster.manifold.is_torus()) {
    for (std::size_t j = 0; j < cluster.modes.size(); ++j) {
      out[j] = torus_mode(cluster.manifold, cluster.modes[j].label, x);
    }
    return;
  }
  const LegendreTable table(cluster.modes.back().label[0], x.coords[0]);
  for (std::size_t j = 0; j < cluster.modes.size(); ++j) {
    const int l = cluster.modes[j].label[0];
    const int m = cluster.modes[j].label[1];
    const int am = std::abs(m);
    const std::complex<double> y = std::polar(table.value(l, am), am * x.coords[1]);
    out[j] = m >= 0 ? y : (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
  }
}

std::vector<std::complex<double>> evaluate_modes_at_point(const Cluster& cluster,
                                                          const Point& x) {
  std::vector<std::complex<double>> out(cluster.dimension());
  evaluate_modes_at_point(cluster, x, out);
  return out;
}

}  // namespace wavestat::spectral
