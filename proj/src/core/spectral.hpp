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
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wavestat::spectral {

enum class ManifoldKind { kFlatTorus2, kFlatTorus3, kRoundSphere2 };

/// A model manifold with an explicit orthonormal eigenbasis. Flat tori are
/// [0, 2π)^n; the sphere is the unit round S².
class Manifold {
 public:
  static Manifold flat_torus(int dimension);
  static Manifold round_sphere();

  ManifoldKind kind() const noexcept { return kind_; }
  int dimension() const noexcept;
  double volume() const noexcept;
  bool is_torus() const noexcept { return kind_ != ManifoldKind::kRoundSphere2; }
  std::string name() const;

  friend bool operator==(const Manifold&, const Manifold&) = default;

 private:
  explicit Manifold(ManifoldKind kind) : kind_(kind) {}
  ManifoldKind kind_;
};

/// Manifold coordinates: torus angles (x1, x2[, x3]) or sphere (colatitude,
/// longitude) in the first two slots.
struct Point {
  std::array<double, 3> coords{};
};

/// One eigenfunction label. Torus: lattice vector k (unused slots zero).
/// Sphere: (l, m, 0) with |m| <= l.
struct EigenMode {
  std::array<int, 3> label{};
  std::int64_t frequency_squared = 0;

  double frequency() const noexcept;
  friend bool operator==(const EigenMode&, const EigenMode&) = default;
};

/// Canonical order: frequency first, then lexicographic label.
bool canonical_less(const EigenMode& lhs, const EigenMode& rhs) noexcept;

std::string mode_label(const Manifold& manifold, const EigenMode& mode);

/// Half-open semiclassical window (a, a + D h].
struct SpectralWindow {
  double a = 1.0;
  double width = 6.0;  // D

  void validate() const;
};

/// The window expressed in frequency units: (lower, upper] with
/// upper = lower + D. Squared bounds that land within 1e-9 of an integer
/// are snapped onto it so that integer eigenvalues on the boundary are
/// classified exactly.
struct FrequencyBounds {
  double lower = 0.0;
  double upper = 0.0;
  double lower_squared = 0.0;
  double upper_squared = 0.0;

  bool contains(std::int64_t frequency_squared) const noexcept {
    const auto f = static_cast<double>(frequency_squared);
    return f > lower_squared && f <= upper_squared;
  }
};

FrequencyBounds frequency_bounds(const SpectralWindow& window, double h);

/// Snap x onto the nearest integer when within 1e-9 relative.
double snap_square(double x) noexcept;

struct Cluster {
  Manifold manifold = Manifold::flat_torus(2);
  SpectralWindow window;
  double h = 1.0;
  std::vector<EigenMode> modes;

  std::size_t dimension() const noexcept { return modes.size(); }
  /// Upper frequency bound of the window, (a + D h) / h.
  double max_frequency() const noexcept;
};

/// All eigenmodes with h * frequency in (a, a + D h], canonically ordered.
/// Throws Error(kEmptyCluster) when the window holds no eigenvalue.
Cluster enumerate_cluster(const Manifold& manifold, const SpectralWindow& window, double h);

/// N_h without materialising the modes.
std::int64_t count_cluster(const Manifold& manifold, const SpectralWindow& window, double h);

/// Every mode with frequency_squared <= max_frequency_squared, including the
/// constant mode, in canonical order.
std::vector<EigenMode> enumerate_modes_up_to(const Manifold& manifold,
                                             double max_frequency_squared);

/// Leading Weyl term c_n Vol(M) / (2π)^n ((b/h)^n - (a/h)^n).
double weyl_prediction(const Manifold& manifold, const SpectralWindow& window, double h);

/// Volume of the unit n-ball.
double unit_ball_volume(int n);

/// Number of integers m with m^2 <= x (x may be fractional or negative).
std::int64_t count_squares_at_most(double x) noexcept;

// --- eigenfunction evaluation -------------------------------------------

/// Orthonormal torus mode Vol^{-1/2} exp(i k.x).
std::complex<double> torus_mode(const Manifold& manifold, const std::array<int, 3>& k,
                                const Point& x);

/// Normalised associated Legendre values for 0 <= m <= l <= l_max with the
/// Condon-Shortley phase, such that Y_lm(θ, φ) = value(l, m) e^{imφ}.
class LegendreTable {
 public:
  LegendreTable(int l_max, double colatitude);

  double value(int l, int m) const noexcept { return values_[index(l, m)]; }
  int l_max() const noexcept { return l_max_; }

 private:
  static std::size_t index(int l, int m) noexcept {
    return static_cast<std::size_t>(l) * (l + 1) / 2 + m;
  }
  int l_max_;
  std::vector<double> values_;
};

/// Complex orthonormal spherical harmonic Y_lm at (colatitude, longitude).
std::complex<double> spherical_harmonic(int l, int m, double colatitude, double longitude);

/// Y_l0 as a function of cos(colatitude); O(l) three-term recurrence.
double zonal_harmonic(int l, double cos_colatitude);

/// b_{x,h}: every cluster mode evaluated at x, in cluster order.
std::vector<std::complex<double>> evaluate_modes_at_point(const Cluster& cluster, const Point& x);

/// Batched form writing into `out` (size = cluster dimension).
void evaluate_modes_at_point(const Cluster& cluster, const Point& x,
                             std::span<std::complex<double>> out);

}  // namespace wavestat::spectral
