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

#include "ensemble.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "error.hpp"
#include "numeric.hpp"
#include "rng.hpp"

namespace wavestat::ensemble {
namespace {

constexpr std::uint32_t kMaxAttempts = 16;
constexpr std::size_t kMaxDenseEntries = 200'000'000;

// The FFTW planner is not thread safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* plan) const noexcept {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
};
using Plan = std::unique_ptr<fftw_plan_s, PlanDeleter>;

Plan make_plan(int n, int sign) {
  std::lock_guard lock(planner_mutex());
  std::vector<std::complex<double>> in(n);
  std::vector<std::complex<double>> out(n);
  return Plan(fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                               reinterpret_cast<fftw_complex*>(out.data()), sign,
                               FFTW_ESTIMATE | FFTW_UNALIGNED));
}

}  // namespace

void fill_coefficients(std::span<std::complex<double>> out, std::uint64_t seed,
                       std::uint64_t index, std::vector<double>& scratch) {
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "coefficient vector needs N >= 1");
  }
  scratch.resize(2 * out.size());
  for (std::uint32_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    CounterStream stream(seed, index, attempt);
    stream.fill_normals(scratch);
    CompensatedSum ss;
    for (double g : scratch) ss.add(g * g);
    const double norm = std::sqrt(ss.value());
    if (!(norm > 0.0)) continue;
    const double inv = 1.0 / norm;
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = {scratch[2 * k] * inv, scratch[2 * k + 1] * inv};
    }
    return;
  }
  throw Error(ErrorCode::kDegenerateDraw, "Gaussian draw was zero on every attempt substream");
}

CoefficientVector sample_coefficients(std::size_t n, std::uint64_t seed, std::uint64_t index) {
  CoefficientVector cv;
  cv.seed = seed;
  cv.sample_index = index;
  cv.z.resize(n);
  std::vector<double> scratch;
  fill_coefficients(cv.z, seed, index, scratch);
  return cv;
}

double period_rv(std::span<const std::complex<double>> z,
                 std::span<const std::complex<double>> periods) {
  if (z.size() != periods.size()) {
    throw Error(ErrorCode::kInvalidArgument, "coefficient and period vectors differ in length");
  }
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const std::complex<double> t = z[k] * periods[k];
    re += t.real();
    im += t.imag();
  }
  return std::hypot(re, im);
}

std::complex<double> field_eval(const spectral::Cluster& cluster,
                                std::span<const std::complex<double>> z,
                                const spectral::Point& x) {
  if (z.size() != cluster.dimension()) {
    throw Error(ErrorCode::kInvalidArgument, "coefficient vector does not match the cluster");
  }
  const auto b = spectral::evaluate_modes_at_point(cluster, x);
  std::complex<double> u{0.0, 0.0};
  for (std::size_t k = 0; k < z.size(); ++k) u += z[k] * b[k];
  return u;
}

std::complex<double> field_eval(const RandomFieldSample& sample, const spectral::Point& x) {
  return field_eval(*sample.cluster, sample.coefficients.z, x);
}

double lq_norm(std::span<const std::complex<double>> values, std::span<const double> weights,
               double q) {
  if (!(q >= 1.0)) throw Error(ErrorCode::kDomainError, "L^q norm needs q >= 1");
  CompensatedSum acc;
  if (q == 2.0) {
    for (std::size_t j = 0; j < values.size(); ++j) acc.add(weights[j] * std::norm(values[j]));
    return std::sqrt(acc.value());
  }
  const double half_q = 0.5 * q;
  const auto whole = static_cast<int>(half_q);
  if (static_cast<double>(whole) == half_q && whole <= 8) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      const double r2 = std::norm(values[j]);
      double power = r2;
      for (int i = 1; i < whole; ++i) power *= r2;
      acc.add(weights[j] * power);
    }
  } else {
    for (std::size_t j = 0; j < values.size(); ++j) {
      acc.add(weights[j] * std::pow(std::norm(values[j]), half_q));
    }
  }
  return std::pow(acc.value(), 1.0 / q);
}

double lq_norm_rv(const RandomFieldSample& sample, const curves::QuadratureRule& rule, double q) {
  std::vector<std::complex<double>> values(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    values[j] = field_eval(sample, rule.nodes[j]);
  }
  return lq_norm(values, rule.weights, q);
}

double pointwise_norm_integral(const spectral::Cluster& cluster,
                               const curves::QuadratureRule& rule, double q) {
  CompensatedSum acc;
  std::vector<std::complex<double>> b(cluster.dimension());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    spectral::evaluate_modes_at_point(cluster, rule.nodes[j], b);
    CompensatedSum sq;
    for (const auto& c : b) sq.add(std::norm(c));
    acc.add(rule.weights[j] * std::pow(sq.value(), 0.5 * q));
  }
  return acc.value();
}

// ---------------------------------------------------------------------------

struct RestrictionOperator::Impl {
  std::size_t modes = 0;
  std::size_t nodes = 0;
  std::vector<double> weights;

  // FFT path
  bool fft = false;
  std::vector<std::size_t> bins;
  std::vector<std::complex<double>> coefficients;
  Plan backward;
  Plan forward;

  // dense path, row-major nodes x modes
  std::vector<std::complex<double>> matrix;
};

RestrictionOperator::RestrictionOperator(const spectral::Cluster& cluster,
                                         const curves::Submanifold& sub,
                                         const curves::QuadratureRule& rule)
    : impl_(std::make_unique<Impl>()) {
  impl_->modes = cluster.dimension();
  impl_->nodes = rule.size();
  impl_->weights = rule.weights;

  const bool line_on_t2 = cluster.manifold.kind() == spectral::ManifoldKind::kFlatTorus2 &&
                          sub.kind() == curves::SubmanifoldKind::kTorusLine && sub.closed() &&
                          rule.uniform;
  if (line_on_t2) {
    const auto m = static_cast<std::int64_t>(rule.size());
    const auto& d = sub.integer_direction();
    std::int64_t max_abs = 0;
    impl_->bins.reserve(impl_->modes);
    impl_->coefficients.reserve(impl_->modes);
    const double amplitude = 1.0 / std::sqrt(cluster.manifold.volume());
    for (const auto& mode : cluster.modes) {
      const std::int64_t nu = static_cast<std::int64_t>(mode.label[0]) * d[0] +
                              static_cast<std::int64_t>(mode.label[1]) * d[1];
      max_abs = std::max(max_abs, std::abs(nu));
      impl_->bins.push_back(static_cast<std::size_t>(((nu % m) + m) % m));
      const double phase = mode.label[0] * sub.spec().base[0] + mode.label[1] * sub.spec().base[1];
      impl_->coefficients.push_back(std::polar(amplitude, phase));
    }
    if (2 * max_abs < m) {
      impl_->fft = true;
      impl_->backward = make_plan(static_cast<int>(m), FFTW_BACKWARD);
      impl_->forward = make_plan(static_cast<int>(m), FFTW_FORWARD);
      return;
    }
    impl_->bins.clear();
    impl_->coefficients.clear();
  }
  if (impl_->modes * impl_->nodes > kMaxDenseEntries) {
    throw Error(ErrorCode::kInvalidArgument,
                "restriction matrix too large: " + std::to_string(impl_->nodes) + " nodes x " +
                    std::to_string(impl_->modes) + " modes");
  }
  impl_->matrix.resize(impl_->modes * impl_->nodes);
  for (std::size_t j = 0; j < impl_->nodes; ++j) {
    spectral::evaluate_modes_at_point(
        cluster, rule.nodes[j],
        std::span(impl_->matrix).subspan(j * impl_->modes, impl_->modes));
  }
}

RestrictionOperator::~RestrictionOperator() = default;
RestrictionOperator::RestrictionOperator(RestrictionOperator&&) noexcept = default;
RestrictionOperator& RestrictionOperator::operator=(RestrictionOperator&&) noexcept = default;

std::size_t RestrictionOperator::mode_count() const noexcept { return impl_->modes; }
std::size_t RestrictionOperator::node_count() const noexcept { return impl_->nodes; }
std::span<const double> RestrictionOperator::weights() const noexcept { return impl_->weights; }
bool RestrictionOperator::uses_fft() const noexcept { return impl_->fft; }

void RestrictionOperator::apply(std::span<const std::complex<double>> z,
                                std::span<std::complex<double>> values, Workspace& ws) const {
  if (z.size() != impl_->modes || values.size() != impl_->nodes) {
    throw Error(ErrorCode::kInvalidArgument, "restriction operator size mismatch");
  }
  if (impl_->fft) {
    ws.buffer.assign(impl_->nodes, {0.0, 0.0});
    for (std::size_t k = 0; k < impl_->modes; ++k) {
      ws.buffer[impl_->bins[k]] += z[k] * impl_->coefficients[k];
    }
    fftw_execute_dft(impl_->backward.get(), reinterpret_cast<fftw_complex*>(ws.buffer.data()),
                     reinterpret_cast<fftw_complex*>(values.data()));
    return;
  }
  for (std::size_t j = 0; j < impl_->nodes; ++j) {
    const std::complex<double>* row = impl_->matrix.data() + j * impl_->modes;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = 0; k < impl_->modes; ++k) acc += row[k] * z[k];
    values[j] = acc;
  }
}

void RestrictionOperator::apply_adjoint(std::span<const std::complex<double>> values,
                                        std::span<std::complex<double>> z, Workspace& ws) const {
  if (z.size() != impl_->modes || values.size() != impl_->nodes) {
    throw Error(ErrorCode::kInvalidArgument, "restriction operator size mismatch");
  }
  if (impl_->fft) {
    ws.buffer.resize(impl_->nodes);
    std::vector<std::complex<double>> input(values.begin(), values.end());
    fftw_execute_dft(impl_->forward.get(), reinterpret_cast<fftw_complex*>(input.data()),
                     reinterpret_cast<fftw_complex*>(ws.buffer.data()));
    for (std::size_t k = 0; k < impl_->modes; ++k) {
      z[k] = std::conj(impl_->coefficients[k]) * ws.buffer[impl_->bins[k]];
    }
    return;
  }
  std::fill(z.begin(), z.end(), std::complex<double>{0.0, 0.0});
  for (std::size_t j = 0; j < impl_->nodes; ++j) {
    const std::complex<double>* row = impl_->matrix.data() + j * impl_->modes;
    for (std::size_t k = 0; k < impl_->modes; ++k) z[k] += std::conj(row[k]) * values[j];
  }
}

double restriction_norm_estimate(const RestrictionOperator& op, double q, std::uint64_t seed,
                                 int starts, int iterations) {
  if (!(q >= 2.0)) throw Error(ErrorCode::kDomainError, "restriction norm needs q >= 2");
  RestrictionOperator::Workspace ws;
  std::vector<std::complex<double>> z(op.mode_count());
  std::vector<std::complex<double>> values(op.node_count());
  std::vector<double> scratch;
  const auto weights = op.weights();
  double best = 0.0;
  for (int s = 0; s < starts; ++s) {
    fill_coefficients(z, seed, static_cast<std::uint64_t>(s), scratch);
    double current = 0.0;
    for (int it = 0; it < iterations; ++it) {
      op.apply(z, values, ws);
      const double norm_q = lq_norm(values, weights, q);
      if (it > 0 && std::abs(norm_q - current) <= 1e-12 * norm_q) {
        current = norm_q;
        break;
      }
      current = norm_q;
      for (std::size_t j = 0; j < values.size(); ++j) {
        values[j] *= weights[j] * std::pow(std::abs(values[j]), q - 2.0);
      }
      op.apply_adjoint(values, z, ws);
      CompensatedSum ss;
      for (const auto& c : z) ss.add(std::norm(c));
      const double nz = std::sqrt(ss.value());
      if (!(nz > 0.0)) break;
      for (auto& c : z) c /= nz;
    }
    best = std::max(best, current);
  }
  return best;
}

}  // namespace wavestat::ensemble
