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

#include "periods.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "numeric.hpp"
#include "stats.hpp"

namespace wavestat::periods {
namespace {

using spectral::EigenMode;
using spectral::Manifold;

constexpr double kConvergenceTolerance = 1e-8;

struct ModeWeight {
  std::int64_t frequency_squared;
  double weight;  // |∫ φ|^2
};

bool resonant_path_available(const Manifold& manifold, const curves::Submanifold& sub) {
  if (!manifold.is_torus() || !sub.closed()) return false;
  if (sub.kind() == curves::SubmanifoldKind::kTorusSubtorus) return true;
  return sub.kind() == curves::SubmanifoldKind::kTorusLine && manifold.dimension() == 2;
}

// Modes whose closed-form period can be nonzero, with |k|^2 <= max_fsq.
std::vector<EigenMode> resonant_modes(const curves::Submanifold& sub,
                                      double max_fsq) {
  std::vector<EigenMode> modes;
  if (max_fsq < 0.0) return modes;
  if (sub.kind() == curves::SubmanifoldKind::kTorusLine) {
    const auto& d = sub.integer_direction();
    const std::int64_t step = static_cast<std::int64_t>(d[0]) * d[0] + static_cast<std::int64_t>(d[1]) * d[1];
    const auto m_max = static_cast<std::int64_t>(std::floor(std::sqrt(max_fsq / static_cast<double>(step))));
    for (std::int64_t m = -m_max - 1; m <= m_max + 1; ++m) {
      const std::int64_t fsq = m * m * step;
      if (static_cast<double>(fsq) > max_fsq) continue;
      modes.push_back(EigenMode{{static_cast<int>(-m * d[1]), static_cast<int>(m * d[0]), 0}, fsq});
    }
  } else {
    const auto& fixed = sub.spec().fixed;
    const auto r = static_cast<std::int64_t>(std::floor(std::sqrt(max_fsq))) + 1;
    std::array<int, 3> k{};
    if (fixed.size() == 1) {
      for (std::int64_t a = -r; a <= r; ++a) {
        if (static_cast<double>(a * a) > max_fsq) continue;
        k = {};
        k[fixed[0].axis] = static_cast<int>(a);
        modes.push_back(EigenMode{k, a * a});
      }
    } else {
      for (std::int64_t a = -r; a <= r; ++a) {
        for (std::int64_t b = -r; b <= r; ++b) {
          if (static_cast<double>(a * a + b * b) > max_fsq) continue;
          k = {};
          k[fixed[0].axis] = static_cast<int>(a);
          k[fixed[1].axis] = static_cast<int>(b);
          modes.push_back(EigenMode{k, a * a + b * b});
        }
      }
    }
  }
  std::sort(modes.begin(), modes.end(), spectral::canonical_less);
  return modes;
}

// (frequency^2, |period|^2) for every mode up to the cutoff that may carry a
// nonzero period.
std::vector<ModeWeight> period_weights_up_to(const Manifold& manifold,
                                             const curves::Submanifold& sub, double max_fsq) {
  std::vector<ModeWeight> out;
  if (resonant_path_available(manifold, sub)) {
    for (const auto& mode : resonant_modes(sub, max_fsq)) {
      out.push_back({mode.frequency_squared, std::norm(torus_period(manifold, mode.label, sub))});
    }
    return out;
  }
  const auto modes = spectral::enumerate_modes_up_to(manifold, max_fsq);
  if (manifold.is_torus()) {
    for (const auto& mode : modes) {
      out.push_back({mode.frequency_squared, std::norm(torus_period(manifold, mode.label, sub))});
    }
    return out;
  }
  const auto rule = curves::quadrature(sub, std::sqrt(std::max(max_fsq, 0.0)));
  const auto values = quadrature_periods(manifold, modes, rule);
  for (std::size_t j = 0; j < modes.size(); ++j) {
    out.push_back({modes[j].frequency_squared, std::norm(values[j])});
  }
  return out;
}

double sum_weights_at_most(const std::vector<ModeWeight>& weights, double max_fsq) {
  std::vector<double> terms;
  for (const auto& w : weights) {
    if (static_cast<double>(w.frequency_squared) <= max_fsq) terms.push_back(w.weight);
  }
  return sorted_sum(std::move(terms));
}

}  // namespace

double squared_norm(std::span<const std::complex<double>> components) {
  std::vector<double> terms;
  terms.reserve(components.size());
  for (const auto& c : components) terms.push_back(std::norm(c));
  return sorted_sum(std::move(terms));
}

std::complex<double> torus_period(const Manifold& manifold, const std::array<int, 3>& k,
                                  const curves::Submanifold& sub) {
  if (!manifold.is_torus()) {
    throw Error(ErrorCode::kInvalidArgument, "closed-form periods exist only on flat tori");
  }
  const int n = manifold.dimension();
  const double amplitude = 1.0 / std::sqrt(manifold.volume());
  const auto& spec = sub.spec();
  if (sub.kind() == curves::SubmanifoldKind::kTorusSubtorus) {
    double phase = 0.0;
    for (const auto& f : spec.fixed) phase += k[f.axis] * f.value;
    for (int axis : sub.free_axes()) {
      if (k[axis] != 0) return {0.0, 0.0};
    }
    return std::polar(amplitude * sub.volume(), phase);
  }
  if (sub.kind() != curves::SubmanifoldKind::kTorusLine) {
    throw Error(ErrorCode::kInvalidArgument, "submanifold does not live on a torus");
  }
  double phase = 0.0;
  double omega = 0.0;
  for (int i = 0; i < n; ++i) {
    phase += k[i] * spec.base[i];
    omega += k[i] * sub.unit_direction()[i];
  }
  const double length = sub.volume();
  if (sub.closed()) {
    std::int64_t resonance = 0;
    for (int i = 0; i < n; ++i) {
      resonance += static_cast<std::int64_t>(k[i]) * sub.integer_direction()[i];
    }
    if (resonance != 0) return {0.0, 0.0};
    return std::polar(amplitude * length, phase);
  }
  if (omega == 0.0) return std::polar(amplitude * length, phase);
  // ∫_0^L e^{iωs} ds = e^{iωL/2} 2 sin(ωL/2) / ω
  return std::polar(amplitude * 2.0 * std::sin(0.5 * omega * length) / omega,
                    phase + 0.5 * omega * length);
}

std::vector<std::complex<double>> quadrature_periods(const Manifold& manifold,
                                                     std::span<const EigenMode> modes,
                                                     const curves::QuadratureRule& rule) {
  std::vector<std::complex<double>> out(modes.size());
  if (modes.empty()) return out;
  const auto per_axis = static_cast<std::size_t>(rule.per_axis);
  const bool tensor = rule.size() == per_axis * per_axis && per_axis > 1;
  if (manifold.is_torus() && rule.uniform && (tensor || rule.size() == per_axis)) {
    // k.x is affine in the node indices, so the sum factors into one-dimensional
    // geometric sums (one per parameter direction).
    const auto n = per_axis;
    const spectral::Point& origin = rule.nodes[0];
    std::array<double, 3> row_step{};
    std::array<double, 3> col_step{};
    for (int a = 0; a < 3; ++a) {
      if (tensor) row_step[a] = rule.nodes[n].coords[a] - origin.coords[a];
      if (n > 1) col_step[a] = rule.nodes[1].coords[a] - origin.coords[a];
    }
    const auto axis_sum = [n](double phase) {
      constexpr std::size_t kBlock = 64;
      const std::complex<double> ratio = std::polar(1.0, phase);
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t start = 0; start < n; start += kBlock) {
        std::complex<double> z = std::polar(1.0, static_cast<double>(start) * phase);
        const std::size_t stop = std::min(n, start + kBlock);
        for (std::size_t i = start; i < stop; ++i) {
          acc += z;
          z *= ratio;
        }
      }
      return acc;
    };
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const auto& k = modes[j].label;
      double row_phase = 0.0;
      double col_phase = 0.0;
      for (int a = 0; a < manifold.dimension(); ++a) {
        row_phase += k[a] * row_step[a];
        col_phase += k[a] * col_step[a];
      }
      std::complex<double> value = rule.weights[0] * spectral::torus_mode(manifold, k, origin) *
                                   axis_sum(col_phase);
      if (tensor) value *= axis_sum(row_phase);
      out[j] = value;
    }
    return out;
  }
  if (manifold.is_torus()) {
    for (std::size_t j = 0; j < modes.size(); ++j) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t i = 0; i < rule.size(); ++i) {
        acc += rule.weights[i] * spectral::torus_mode(manifold, modes[j].label, rule.nodes[i]);
      }
      out[j] = acc;
    }
    return out;
  }
  int l_max = 0;
  for (const auto& mode : modes) l_max = std::max(l_max, mode.label[0]);
  std::vector<std::complex<double>> phases(l_max + 1);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const spectral::LegendreTable table(l_max, rule.nodes[i].coords[0]);
    for (int m = 0; m <= l_max; ++m) phases[m] = std::polar(1.0, m * rule.nodes[i].coords[1]);
    const double w = rule.weights[i];
    for (std::size_t j = 0; j < modes.size(); ++j) {
      const int l = modes[j].label[0];
      const int m = modes[j].label[1];
      const int am = std::abs(m);
      std::complex<double> y = table.value(l, am) * phases[am];
      if (m < 0) y = (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
      out[j] += w * y;
    }
  }
  return out;
}

PeriodVector period_vector(const spectral::Cluster& cluster, const curves::Submanifold& sub,
                           PeriodMethod method) {
  if (cluster.modes.empty()) {
    throw Error(ErrorCode::kEmptyCluster, "period vector of an empty cluster");
  }
  if (!(cluster.manifold == sub.manifold())) {
    throw Error(ErrorCode::kInvalidArgument, "cluster and submanifold live on different manifolds");
  }
  PeriodVector pv;
  const bool torus = cluster.manifold.is_torus();
  if (!torus && method == PeriodMethod::kClosedForm) {
    throw Error(ErrorCode::kInvalidArgument, "no closed-form periods on the sphere");
  }
  if (torus && method != PeriodMethod::kQuadrature) {
    pv.components.reserve(cluster.dimension());
    for (const auto& mode : cluster.modes) {
      pv.components.push_back(torus_period(cluster.manifold, mode.label, sub));
    }
  } else {
    const auto rule = curves::quadrature(sub, cluster.max_frequency());
    pv.components = quadrature_periods(cluster.manifold, cluster.modes, rule);
    if (!torus) {
      const auto refined = quadrature_periods(
          cluster.manifold, cluster.modes, curves::quadrature_with_count(sub, 2 * rule.per_axis));
      const double floor = sub.volume() / std::sqrt(cluster.manifold.volume());
      for (std::size_t j = 0; j < refined.size(); ++j) {
        const double diff = std::abs(pv.components[j] - refined[j]);
        if (diff > kConvergenceTolerance * std::max(std::abs(refined[j]), floor)) {
          std::ostringstream msg;
          msg << "quadrature did not converge for mode "
              << spectral::mode_label(cluster.manifold, cluster.modes[j]) << ": change " << diff
              << " under 2x refinement";
          throw Error(ErrorCode::kQuadratureNotConverged, msg.str());
        }
      }
    }
  }
  pv.squared_norm = squared_norm(pv.components);
  return pv;
}

double kuznecov_sum(const Manifold& manifold, const curves::Submanifold& sub, double h) {
  if (!(h > 0.0 && h <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Kuznecov cutoff h must lie in (0, 1]");
  }
  const double max_fsq = spectral::snap_square(1.0 / (h * h));
  return sum_weights_at_most(period_weights_up_to(manifold, sub, max_fsq), max_fsq);
}

std::vector<KuznecovPoint> kuznecov_cumulative(const Manifold& manifold,
                                               const curves::Submanifold& sub, double h_min,
                                               int points) {
  if (!(h_min > 0.0 && h_min <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "h_min must lie in (0, 1]");
  }
  if (points < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one grid point");
  std::vector<double> grid;
  if (h_min == 1.0 || points == 1) {
    grid.push_back(h_min);
  } else {
    for (int i = 0; i < points; ++i) {
      grid.push_back(std::exp(std::log(h_min) * i / (points - 1)));
    }
    grid.back() = h_min;
  }
  const double max_fsq = spectral::snap_square(1.0 / (h_min * h_min));
  const auto weights = period_weights_up_to(manifold, sub, max_fsq);
  std::vector<KuznecovPoint> out;
  for (double h : grid) {
    out.push_back({h, sum_weights_at_most(weights, spectral::snap_square(1.0 / (h * h)))});
  }
  return out;
}

double window_period_norm(const Manifold& manifold, const curves::Submanifold& sub,
                          const spectral::SpectralWindow& window, double h) {
  if (!resonant_path_available(manifold, sub)) {
    const auto cluster = spectral::enumerate_cluster(manifold, window, h);
    return period_vector(cluster, sub).squared_norm;
  }
  window.validate();
  const auto bounds = spectral::frequency_bounds(window, h);
  std::vector<double> terms;
  for (const auto& mode : resonant_modes(sub, bounds.upper_squared)) {
    if (!bounds.contains(mode.frequency_squared)) continue;
    terms.push_back(std::norm(torus_period(manifold, mode.label, sub)));
  }
  return sorted_sum(std::move(terms));
}

KuznecovPrediction fit_kuznecov_leading(std::span<const KuznecovPoint> data,
                                        double expected_exponent) {
  if (data.size() < 5) {
    throw Error(ErrorCode::kInvalidArgument, "Kuznecov fit needs at least 5 grid points");
  }
  double h_lo = data[0].h;
  double h_hi = data[0].h;
  std::vector<double> log_h;
  std::vector<double> log_e;
  for (const auto& p : data) {
    h_lo = std::min(h_lo, p.h);
    h_hi = std::max(h_hi, p.h);
    if (!(p.value > 0.0)) {
      throw Error(ErrorCode::kPoorFit, "Kuznecov data must be positive for a power-law fit");
    }
    log_h.push_back(std::log(p.h));
    log_e.push_back(std::log(p.value));
  }
  if (h_hi < 4.0 * h_lo) {
    throw Error(ErrorCode::kInvalidArgument, "Kuznecov fit grid must span a factor >= 4 in h");
  }
  const auto fit = stats::fit_line(log_h, log_e);
  KuznecovPrediction pred;
  pred.exponent = -fit.slope;
  pred.expected_exponent = expected_exponent;
  CompensatedSum num;
  CompensatedSum den;
  for (const auto& p : data) {
    const double x = std::pow(p.h, -expected_exponent);
    num.add(p.value * x);
    den.add(x * x);
  }
  pred.leading_coefficient = num.value() / den.value();
  if (std::abs(pred.exponent - expected_exponent) > 0.2) {
    std::ostringstream msg;
    msg << "fitted Kuznecov exponent " << pred.exponent << " differs from expected "
        << expected_exponent << " by more than 0.2";
    throw Error(ErrorCode::kPoorFit, msg.str());
  }
  return pred;
}

std::vector<std::pair<std::string, std::complex<double>>> labelled_components(
    const spectral::Cluster& cluster, const PeriodVector& periods) {
  std::vector<std::pair<std::string, std::complex<double>>> rows;
  for (std::size_t j = 0; j < cluster.modes.size(); ++j) {
    rows.emplace_back(spectral::mode_label(cluster.manifold, cluster.modes[j]),
                      periods.components.at(j));
  }
  return rows;
}

}  // namespace wavestat::periods
