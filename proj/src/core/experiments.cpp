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

#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>
#include <tuple>

#include "curves.hpp"
#include "ensemble.hpp"
#include "error.hpp"
#include "exactstats.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "periods.hpp"
#include "rng.hpp"
#include "spectral.hpp"
#include "stats.hpp"

namespace wavestat::experiments {
namespace {

using exactstats::ExactLaw;

// Purpose tags for derived seeds; each experiment family draws from its own
// stream so that adding one never shifts another.
constexpr std::uint64_t kTagPairs = 0x7061697273ull;
constexpr std::uint64_t kTagLq = 0x6c71ull;
constexpr std::uint64_t kTagPower = 0x706f776572ull;
constexpr std::uint64_t kTagSweep = 0x7377656570ull;

constexpr double kZLimit = 3.0;
constexpr double kRoundingSlack = 1e-12;
constexpr double kLipschitzSlack = 1e-10;
constexpr std::int64_t kMaxEnumerationCheck = 2'000'000;

struct Setup {
  spectral::Cluster cluster;
  curves::Submanifold sub;
  periods::PeriodVector periods;
  ExactLaw law;
};

Setup prepare(const ExperimentConfig& c, double h) {
  auto cluster = spectral::enumerate_cluster(c.manifold, c.window, h);
  auto sub = curves::build_submanifold(c.manifold, c.submanifold);
  auto pv = periods::period_vector(cluster, sub);
  const ExactLaw law{static_cast<std::int64_t>(cluster.dimension()), pv.squared_norm};
  return {std::move(cluster), std::move(sub), std::move(pv), law};
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string tag(double h) { return "h=" + fmt(h); }

std::vector<double> sorted_copy(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::int64_t count_greater(const std::vector<double>& sorted, double x) {
  return static_cast<std::int64_t>(sorted.end() -
                                   std::upper_bound(sorted.begin(), sorted.end(), x));
}

double profile_integral(const spectral::Cluster& cluster, const curves::Submanifold& sub,
                        const curves::QuadratureRule& rule, double q) {
  if (cluster.manifold.is_torus()) {
    return exactstats::torus_profile_integral(q, static_cast<std::int64_t>(cluster.dimension()),
                                              sub.volume(), cluster.manifold.volume());
  }
  return ensemble::pointwise_norm_integral(cluster, rule, q);
}

// ‖u‖_{L^q(S)} for every q and sample index; result[qi][i].
std::vector<std::vector<double>> sample_lq_norms(const ensemble::RestrictionOperator& op,
                                                 const std::vector<double>& qs,
                                                 std::int64_t count, std::uint64_t seed,
                                                 int workers) {
  std::vector<std::vector<double>> out(qs.size(), std::vector<double>(count));
  parallel_for(count, workers, [&](std::int64_t begin, std::int64_t end) {
    ensemble::RestrictionOperator::Workspace ws;
    std::vector<std::complex<double>> z(op.mode_count());
    std::vector<std::complex<double>> values(op.node_count());
    std::vector<double> scratch;
    for (std::int64_t i = begin; i < end; ++i) {
      ensemble::fill_coefficients(z, seed, static_cast<std::uint64_t>(i), scratch);
      op.apply(z, values, ws);
      for (std::size_t qi = 0; qi < qs.size(); ++qi) {
        out[qi][i] = ensemble::lq_norm(values, op.weights(), qs[qi]);
      }
    }
  });
  return out;
}

double sample_sd(const std::vector<double>& values) {
  const auto est = stats::mean_and_stderr(values);
  return est.standard_error * std::sqrt(static_cast<double>(values.size()));
}

// Integer m with lower < |m| |d| <= upper in squared arithmetic.
std::int64_t resonant_multiples(const spectral::FrequencyBounds& bounds, std::int64_t step) {
  std::int64_t count = 0;
  const auto m_max = static_cast<std::int64_t>(std::sqrt(bounds.upper_squared / step)) + 1;
  for (std::int64_t m = -m_max; m <= m_max; ++m) {
    if (bounds.contains(m * m * step)) ++count;
  }
  return count;
}

double zonal_arc_period(const curves::Submanifold& arc, int l, std::int64_t per_axis) {
  const auto rule = curves::quadrature_with_count(arc, per_axis);
  CompensatedSum acc;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    acc.add(rule.weights[j] * spectral::zonal_harmonic(l, std::cos(rule.nodes[j].coords[0])));
  }
  return acc.value();
}

double converged_zonal_period(const curves::Submanifold& arc, int l) {
  const double freq = std::sqrt(static_cast<double>(l) * (l + 1));
  const std::int64_t n = curves::nyquist_node_count(arc.volume(), freq);
  const double coarse = zonal_arc_period(arc, l, n);
  const double fine = zonal_arc_period(arc, l, 2 * n);
  const double floor = arc.volume() / std::sqrt(4.0 * kPi);
  if (std::abs(coarse - fine) > 1e-8 * std::max(std::abs(fine), floor)) {
    throw Error(ErrorCode::kQuadratureNotConverged,
                "zonal period quadrature did not converge at l = " + std::to_string(l));
  }
  return fine;
}

}  // namespace

std::vector<double> sample_period_rv(const std::vector<std::complex<double>>& periods,
                                     std::int64_t count, std::uint64_t seed, int workers) {
  std::vector<double> out(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  parallel_for(count, workers, [&](std::int64_t begin, std::int64_t end) {
    std::vector<std::complex<double>> z(periods.size());
    std::vector<double> scratch;
    for (std::int64_t i = begin; i < end; ++i) {
      ensemble::fill_coefficients(z, seed, static_cast<std::uint64_t>(i), scratch);
      out[i] = ensemble::period_rv(z, periods);
    }
  });
  return out;
}

// ---------------------------------------------------------------------------

Report run_modes(const ExperimentConfig& c) {
  c.validate();
  Report report;
  report.experiment = "modes";
  Table summary{"modes", {"h", "n_modes", "weyl", "ratio_to_weyl", "n_modes_h_over_2piD"}, {}};
  for (double h : c.h) {
    const std::int64_t n = spectral::count_cluster(c.manifold, c.window, h);
    if (n == 0) {
      // enumerate_cluster carries the window diagnostic
      (void)spectral::enumerate_cluster(c.manifold, c.window, h);
    }
    const double weyl = spectral::weyl_prediction(c.manifold, c.window, h);
    const double scaled = static_cast<double>(n) * h / (kTwoPi * c.window.width);
    summary.add_row({h, n, weyl, static_cast<double>(n) / weyl, scaled});
    if (n <= kMaxEnumerationCheck) {
      const auto cluster = spectral::enumerate_cluster(c.manifold, c.window, h);
      report.check("enumeration_matches_count " + tag(h),
                   static_cast<std::int64_t>(cluster.dimension()) == n,
                   static_cast<double>(cluster.dimension()), static_cast<double>(n));
    }
    const double inv_h = 1.0 / h;
    if (c.manifold.kind() == spectral::ManifoldKind::kFlatTorus2 && c.window.width >= 6.0 &&
        inv_h >= 50.0 - 1e-9 && inv_h <= 500.0 + 1e-9) {
      report.check("weyl_bracket " + tag(h), scaled >= 0.8 && scaled <= 1.2, scaled, 0.2);
    }
  }
  report.tables.push_back(std::move(summary));

  const auto cluster = spectral::enumerate_cluster(c.manifold, c.window, c.h.front());
  Table list{"modes_list", {"h", "label", "frequency_squared"}, {}};
  for (const auto& mode : cluster.modes) {
    list.add_row({c.h.front(), spectral::mode_label(c.manifold, mode), mode.frequency_squared});
  }
  report.tables.push_back(std::move(list));
  return report;
}

Report run_period(const ExperimentConfig& c) {
  c.validate();
  Report report;
  report.experiment = "period";
  const auto sub = curves::build_submanifold(c.manifold, c.submanifold);
  Table summary{"period",
                {"h", "n_modes", "period_norm_sq", "resonant_norm_sq", "expected_norm_sq"},
                {}};
  const bool torus_line = c.manifold.is_torus() &&
                          sub.kind() == curves::SubmanifoldKind::kTorusLine && sub.closed();
  for (double h : c.h) {
    const auto setup = prepare(c, h);
    const double resonant = periods::window_period_norm(c.manifold, sub, c.window, h);
    Cell expected;
    if (torus_line) {
      const auto& d = sub.integer_direction();
      const std::int64_t step = static_cast<std::int64_t>(d[0]) * d[0] +
                                static_cast<std::int64_t>(d[1]) * d[1] +
                                static_cast<std::int64_t>(d[2]) * d[2];
      const std::int64_t exact =
          step * resonant_multiples(spectral::frequency_bounds(c.window, h), step);
      expected = exact;
      report.check("period_norm_matches_count " + tag(h),
                   std::abs(setup.periods.squared_norm - static_cast<double>(exact)) <=
                       1e-12 * std::max(1.0, static_cast<double>(exact)),
                   setup.periods.squared_norm, static_cast<double>(exact));
      if (step == 1 && c.manifold.dimension() == 2 && 1.0 / h >= 10.0 - 1e-9) {
        const double lo = 2.0 * (c.window.width - 1.0);
        const double hi = 2.0 * (c.window.width + 1.0);
        report.check("kuznecov_window_bracket " + tag(h),
                     setup.periods.squared_norm >= lo - 1e-9 &&
                         setup.periods.squared_norm <= hi + 1e-9,
                     setup.periods.squared_norm, hi);
      }
    }
    summary.add_row({h, static_cast<std::int64_t>(setup.cluster.dimension()),
                     setup.periods.squared_norm, resonant, expected});
    report.check("resonant_path_agrees " + tag(h),
                 std::abs(resonant - setup.periods.squared_norm) <=
                     1e-12 * std::max(1.0, resonant),
                 resonant, setup.periods.squared_norm);
    if (c.manifold.is_torus()) {
      const auto quad =
          periods::period_vector(setup.cluster, sub, periods::PeriodMethod::kQuadrature);
      double max_diff = 0.0;
      for (std::size_t j = 0; j < quad.size(); ++j) {
        max_diff = std::max(max_diff, std::abs(quad.components[j] - setup.periods.components[j]));
      }
      report.check("closed_form_vs_quadrature " + tag(h), max_diff <= 1e-10, max_diff, 1e-10);
    }
  }
  report.tables.push_back(std::move(summary));

  {
    const auto setup = prepare(c, c.h.front());
    Table vec{"period_vector", {"modeLabel", "re", "im"}, {}};
    for (const auto& [label, value] : periods::labelled_components(setup.cluster, setup.periods)) {
      vec.add_row({label, value.real(), value.imag()});
    }
    report.tables.push_back(std::move(vec));
  }

  const auto data =
      periods::kuznecov_cumulative(c.manifold, sub, c.kuznecov_h_min, c.kuznecov_points);
  const double expected_exponent = c.manifold.dimension() - sub.dimension();
  Table cumulative{"kuznecov", {"h", "E", "scaled_E"}, {}};
  for (const auto& pt : data) {
    cumulative.add_row({pt.h, pt.value, pt.value * std::pow(pt.h, expected_exponent)});
  }
  report.tables.push_back(std::move(cumulative));
  Table fit_table{"kuznecov_fit", {"leading_coefficient", "exponent", "expected_exponent"}, {}};
  if (data.size() >= 5) {
    try {
      const auto fit = periods::fit_kuznecov_leading(data, expected_exponent);
      fit_table.add_row({fit.leading_coefficient, fit.exponent, fit.expected_exponent});
      report.check("kuznecov_exponent", true, fit.exponent, expected_exponent);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kPoorFit) throw;
      report.check("kuznecov_exponent", false, std::numeric_limits<double>::quiet_NaN(),
                   expected_exponent);
    }
  }
  report.tables.push_back(std::move(fit_table));
  return report;
}

// ---------------------------------------------------------------------------

std::vector<MomentReport> moment_reports(const ExperimentConfig& c) {
  c.validate();
  std::vector<MomentReport> out;
  for (double h : c.h) {
    const auto setup = prepare(c, h);
    const auto values = sample_period_rv(setup.periods.components, c.samples, c.seed, c.workers);
    std::vector<double> powered(values.size());
    for (double p : c.p) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        powered[i] = p == 0.0 ? 1.0 : std::pow(values[i], p);
      }
      const auto est = stats::mean_and_stderr(powered);
      MomentReport r;
      r.h = h;
      r.p = p;
      r.exact = exactstats::moment_exact(p, setup.law);
      r.mc_mean = est.mean;
      r.mc_stderr = est.standard_error;
      r.sample_count = c.samples;
      r.modes = setup.law.modes;
      r.period_norm_sq = setup.law.period_norm_sq;
      if (r.mc_stderr > 0.0) {
        r.z_score = (r.mc_mean - r.exact) / r.mc_stderr;
      } else {
        r.z_score = r.mc_mean == r.exact ? 0.0 : std::numeric_limits<double>::infinity();
      }
      out.push_back(r);
    }
  }
  return out;
}

Report run_moments(const ExperimentConfig& c) {
  Report report;
  report.experiment = "moments";
  Table table{"moments", {"h", "p", "exact", "mc_mean", "mc_stderr", "z"}, {}};
  bool control_done = false;
  for (const auto& r : moment_reports(c)) {
    table.add_row({r.h, r.p, r.exact, r.mc_mean, r.mc_stderr, r.z_score});
    const std::string where = tag(r.h) + " p=" + fmt(r.p);
    report.check("moment_z " + where, std::abs(r.z_score) <= kZLimit, r.z_score, kZLimit);
    if (r.p == 2.0) {
      const double symmetric = r.period_norm_sq / static_cast<double>(r.modes);
      const double z = (r.mc_mean - symmetric) / r.mc_stderr;
      report.check("symmetry_oracle_z " + where, std::abs(z) <= kZLimit, z, kZLimit);
    }
    if (!control_done && r.p > 0.0) {
      const ExactLaw corrupted{r.modes, r.period_norm_sq * c.corrupt_ns_factor};
      const double z = (r.mc_mean - exactstats::moment_exact(r.p, corrupted)) / r.mc_stderr;
      report.check("negative_control_detected " + where, std::abs(z) > kZLimit, z, kZLimit);
      control_done = true;
    }
  }
  report.tables.push_back(std::move(table));
  return report;
}

TailReport tail_report(const ExperimentConfig& c) {
  c.validate();
  TailReport r;
  r.h = c.h.front();
  const auto setup = prepare(c, r.h);
  r.modes = setup.law.modes;
  r.period_norm_sq = setup.law.period_norm_sq;
  r.sample_count = c.samples;
  const auto sorted =
      sorted_copy(sample_period_rv(setup.periods.components, c.samples, c.seed, c.workers));
  const double cap = std::sqrt(setup.law.period_norm_sq);
  const auto n = static_cast<double>(sorted.size());
  for (int i = 0; i < c.lambda_grid; ++i) {
    const double lambda = cap * i / (c.lambda_grid - 1);
    r.lambda.push_back(lambda);
    r.empirical_survival.push_back(static_cast<double>(count_greater(sorted, lambda)) / n);
    r.exact_survival.push_back(exactstats::survival_exact(lambda, setup.law));
  }
  const auto cdf_for = [](const ExactLaw& law) {
    return [law](double x) { return 1.0 - exactstats::survival_exact(x, law); };
  };
  r.ks_distance = stats::ks_distance(sorted, cdf_for(setup.law));
  r.ks_threshold = stats::ks_threshold_001(c.samples);
  const ExactLaw corrupted{setup.law.modes, setup.law.period_norm_sq * c.corrupt_ns_factor};
  r.corrupted_ks_distance = stats::ks_distance(sorted, cdf_for(corrupted));
  return r;
}

Report run_tail(const ExperimentConfig& c) {
  const auto r = tail_report(c);
  Report report;
  report.experiment = "tail";
  Table grid{"tail", {"lambda", "empirical_survival", "exact_survival"}, {}};
  for (std::size_t i = 0; i < r.lambda.size(); ++i) {
    grid.add_row({r.lambda[i], r.empirical_survival[i], r.exact_survival[i]});
  }
  Table summary{"tail_summary",
                {"h", "n_modes", "period_norm_sq", "samples", "ks_distance", "ks_threshold",
                 "corrupted_ks_distance"},
                {}};
  summary.add_row({r.h, r.modes, r.period_norm_sq, r.sample_count, r.ks_distance,
                   r.ks_threshold, r.corrupted_ks_distance});
  report.tables.push_back(std::move(grid));
  report.tables.push_back(std::move(summary));
  report.check("ks_within_threshold", r.ks_distance <= r.ks_threshold, r.ks_distance,
               r.ks_threshold);
  report.check("negative_control_detected", r.corrupted_ks_distance > r.ks_threshold,
               r.corrupted_ks_distance, r.ks_threshold);
  return report;
}

// ---------------------------------------------------------------------------

Report run_concentration(const ExperimentConfig& c) {
  c.validate();
  Report report;
  report.experiment = "concentration";

  // F_1 at the first h.
  {
    const double h = c.h.front();
    const auto setup = prepare(c, h);
    const auto& law = setup.law;
    const auto sorted =
        sorted_copy(sample_period_rv(setup.periods.components, c.samples, c.seed, c.workers));
    const double median = stats::median_sorted(sorted);
    std::vector<double> deviation(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) deviation[i] = std::abs(sorted[i] - median);
    std::sort(deviation.begin(), deviation.end());

    Table table{"concentration_period",
                {"r", "exceedance", "wilson_lower", "wilson_upper", "derived_bound",
                 "stated_bound"},
                {}};
    const double cap = std::sqrt(law.period_norm_sq);
    std::int64_t violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int j = 1; j <= c.r_grid; ++j) {
      const double r = cap * j / c.r_grid;
      const std::int64_t k = count_greater(deviation, r);
      const auto wilson = stats::wilson_interval(k, c.samples, stats::kZ99);
      const auto bound = exactstats::concentration_bound_period(r, 1.0, law);
      table.add_row({r, static_cast<double>(k) / static_cast<double>(c.samples), wilson.lower,
                     wilson.upper, bound.derived_value, bound.stated_value});
      if (wilson.lower > bound.derived_value) ++violations;
      worst = std::max(worst, wilson.lower - bound.derived_value);
    }
    report.tables.push_back(std::move(table));
    report.check("period_exceedance_below_bound " + tag(h), violations == 0, worst, 0.0);

    const double a1 = exactstats::moment_exact(1.0, law);
    const double exact_median = exactstats::median_exact(law);
    const auto ci = stats::median_interval_sorted(sorted);
    Table gap{"concentration_gap",
              {"h", "n_modes", "period_norm_sq", "a1_exact", "mc_median", "median_exact",
               "median_lower", "median_upper", "gap", "gap_bound"},
              {}};
    Cell gap_bound_cell;
    const double gap_value = std::abs(a1 - median);
    try {
      const double gap_bound = exactstats::mean_median_gap_bound(1.0, law);
      gap_bound_cell = gap_bound;
      report.check("mean_median_gap " + tag(h), gap_value <= gap_bound, gap_value, gap_bound);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnbounded) throw;
      report.check("mean_median_gap " + tag(h), false, gap_value,
                   std::numeric_limits<double>::infinity());
    }
    gap.add_row({h, law.modes, law.period_norm_sq, a1, median, exact_median, ci.lower, ci.upper,
                 gap_value, gap_bound_cell});
    report.tables.push_back(std::move(gap));
    report.check("median_matches_exact " + tag(h),
                 exact_median >= ci.lower && exact_median <= ci.upper, exact_median, median);

    // Lipschitz property over independent pairs.
    const std::uint64_t pair_seed = ensemble::derive_seed(c.seed, kTagPairs);
    const auto n_pairs = static_cast<std::size_t>(c.lipschitz_pairs);
    std::vector<double> fu(n_pairs);
    std::vector<double> fv(n_pairs);
    std::vector<double> dz(n_pairs);
    parallel_for(c.lipschitz_pairs, c.workers, [&](std::int64_t begin, std::int64_t end) {
      std::vector<std::complex<double>> u(setup.cluster.dimension());
      std::vector<std::complex<double>> v(setup.cluster.dimension());
      std::vector<double> scratch;
      for (std::int64_t i = begin; i < end; ++i) {
        ensemble::fill_coefficients(u, pair_seed, static_cast<std::uint64_t>(2 * i), scratch);
        ensemble::fill_coefficients(v, pair_seed, static_cast<std::uint64_t>(2 * i + 1), scratch);
        fu[i] = ensemble::period_rv(u, setup.periods.components);
        fv[i] = ensemble::period_rv(v, setup.periods.components);
        CompensatedSum ss;
        for (std::size_t k = 0; k < u.size(); ++k) ss.add(std::norm(u[k] - v[k]));
        dz[i] = std::sqrt(ss.value());
      }
    });
    Table lip{"lipschitz", {"p", "pairs", "max_ratio", "lipschitz_bound", "violations"}, {}};
    for (double p : c.p) {
      if (p <= 0.0) continue;
      const double bound = exactstats::lipschitz_const_period(p, law.period_norm_sq);
      double max_ratio = 0.0;
      std::int64_t bad = 0;
      for (std::size_t i = 0; i < n_pairs; ++i) {
        const double diff = std::abs(std::pow(fu[i], p) - std::pow(fv[i], p));
        if (dz[i] > 0.0) max_ratio = std::max(max_ratio, diff / dz[i]);
        if (diff > bound * dz[i] + kLipschitzSlack) ++bad;
      }
      lip.add_row({p, static_cast<std::int64_t>(n_pairs), max_ratio, bound, bad});
      report.check("lipschitz_violations p=" + fmt(p), bad == 0, static_cast<double>(bad), 0.0);
    }
    report.tables.push_back(std::move(lip));
  }

  // ‖u‖_{L^q(S)} across the h list.
  const std::uint64_t lq_seed = ensemble::derive_seed(c.seed, kTagLq);
  const std::uint64_t power_seed = ensemble::derive_seed(c.seed, kTagPower);
  Table exceed{"concentration_lq", {"h", "q", "r", "exceedance", "wilson_lower", "bound"}, {}};
  Table rates{"concentration_rate",
              {"h", "q", "n_modes", "lipschitz_estimate", "lipschitz_bound", "rate_estimate",
               "empirical_sd"},
              {}};
  std::vector<std::vector<double>> rate_by_q(c.q.size());
  std::vector<std::vector<double>> sd_by_q(c.q.size());
  for (double h : c.h) {
    const auto cluster = spectral::enumerate_cluster(c.manifold, c.window, h);
    const auto sub = curves::build_submanifold(c.manifold, c.submanifold);
    const auto rule = curves::quadrature(sub, cluster.max_frequency());
    const ensemble::RestrictionOperator op(cluster, sub, rule);
    const auto norms = sample_lq_norms(op, c.q, c.lq_samples, lq_seed, c.workers);
    const auto n = static_cast<std::int64_t>(cluster.dimension());
    for (std::size_t qi = 0; qi < c.q.size(); ++qi) {
      const double q = c.q[qi];
      const auto sorted = sorted_copy(norms[qi]);
      const double median = stats::median_sorted(sorted);
      std::vector<double> deviation(sorted.size());
      for (std::size_t i = 0; i < sorted.size(); ++i) deviation[i] = std::abs(sorted[i] - median);
      std::sort(deviation.begin(), deviation.end());
      const double lip_bound = std::pow(profile_integral(cluster, sub, rule, q), 1.0 / q);
      const auto bound = exactstats::sphere_deviation_bound(n, lip_bound);
      const double r_max = deviation.back();
      std::int64_t violations = 0;
      double worst = -std::numeric_limits<double>::infinity();
      for (int j = 1; j <= c.r_grid; ++j) {
        const double r = r_max * j / c.r_grid;
        const std::int64_t k = count_greater(deviation, r);
        const auto wilson = stats::wilson_interval(k, c.lq_samples, stats::kZ99);
        const double b = bound.evaluate(r);
        exceed.add_row({h, q, r, static_cast<double>(k) / static_cast<double>(c.lq_samples),
                        wilson.lower, b});
        if (wilson.lower > b) ++violations;
        worst = std::max(worst, wilson.lower - b);
      }
      report.check("lq_exceedance_below_bound " + tag(h) + " q=" + fmt(q), violations == 0,
                   worst, 0.0);

      const double lip = ensemble::restriction_norm_estimate(op, q, power_seed);
      const double rate = (2.0 * static_cast<double>(n) - 2.0) / (2.0 * lip * lip);
      const double sd = sample_sd(norms[qi]);
      rates.add_row({h, q, n, lip, lip_bound, rate, sd});
      rate_by_q[qi].push_back(rate);
      sd_by_q[qi].push_back(sd);
    }
  }
  report.tables.push_back(std::move(exceed));
  report.tables.push_back(std::move(rates));

  Table fits{"concentration_rate_fit",
             {"q", "rate_exponent", "expected_exponent", "empirical_width_exponent"},
             {}};
  if (c.h.size() >= 2) {
    std::vector<double> log_inv_h;
    for (double h : c.h) log_inv_h.push_back(-std::log(h));
    for (std::size_t qi = 0; qi < c.q.size(); ++qi) {
      std::vector<double> log_rate;
      std::vector<double> log_width;
      for (std::size_t i = 0; i < c.h.size(); ++i) {
        log_rate.push_back(std::log(rate_by_q[qi][i]));
        log_width.push_back(-2.0 * std::log(sd_by_q[qi][i]));
      }
      const double fitted = stats::fit_line(log_inv_h, log_rate).slope;
      const double empirical = stats::fit_line(log_inv_h, log_width).slope;
      const double expected = exactstats::rate_exponent(c.q[qi]);
      fits.add_row({c.q[qi], fitted, expected, empirical});
      if (c.q[qi] == 2.0) {
        report.check("lq_rate_exponent q=2", std::abs(fitted - expected) <= 0.2, fitted,
                     expected);
      }
    }
  }
  report.tables.push_back(std::move(fits));
  return report;
}

// ---------------------------------------------------------------------------

ScalingReport scaling_report(const ExperimentConfig& c) {
  c.validate();
  ScalingReport r;
  const auto sub = curves::build_submanifold(c.manifold, c.submanifold);
  r.expected_slope = 0.5 * sub.dimension();
  r.tolerance = sub.dimension() == 1 ? 0.10 : 0.15;
  const std::uint64_t seed = ensemble::derive_seed(c.seed, kTagSweep);
  std::vector<double> log_h;
  std::vector<double> log_a;
  for (double h : c.sweep_h) {
    const std::int64_t n = spectral::count_cluster(c.manifold, c.window, h);
    if (n == 0) (void)spectral::enumerate_cluster(c.manifold, c.window, h);
    const double ns = periods::window_period_norm(c.manifold, sub, c.window, h);
    const double a1 = exactstats::moment_exact(1.0, ExactLaw{n, ns});
    r.h.push_back(h);
    r.modes.push_back(n);
    r.period_norm_sq.push_back(ns);
    r.value.push_back(a1);
    log_h.push_back(std::log(h));
    log_a.push_back(std::log(a1));
    if (c.sweep_mc_samples > 0) {
      const auto setup = prepare(c, h);
      const auto sorted = sorted_copy(
          sample_period_rv(setup.periods.components, c.sweep_mc_samples, seed, c.workers));
      r.mc_median.push_back(stats::median_sorted(sorted));
    }
  }
  const auto fit = stats::fit_line(log_h, log_a);
  r.slope = fit.slope;
  std::tie(r.slope_lower, r.slope_upper) = fit.slope_interval(0.95);
  return r;
}

Report run_scaling_sweep(const ExperimentConfig& c) {
  const auto r = scaling_report(c);
  Report report;
  report.experiment = "sweep";
  Table table{"sweep",
              {"row", "h", "n_modes", "period_norm_sq", "a1_exact", "a1_over_h_pow", "mc_median",
               "slope", "slope_lower", "slope_upper"},
              {}};
  double bracket_lo = std::numeric_limits<double>::infinity();
  double bracket_hi = 0.0;
  for (std::size_t i = 0; i < r.h.size(); ++i) {
    const double scaled = r.value[i] / std::pow(r.h[i], r.expected_slope);
    bracket_lo = std::min(bracket_lo, scaled);
    bracket_hi = std::max(bracket_hi, scaled);
    Cell median;
    if (!r.mc_median.empty()) median = r.mc_median[i];
    table.add_row({std::string("point"), r.h[i], r.modes[i], r.period_norm_sq[i], r.value[i],
                   scaled, median, Cell{}, Cell{}, Cell{}});
  }
  table.add_row({std::string("fit"), Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, r.slope,
                 r.slope_lower, r.slope_upper});
  report.tables.push_back(std::move(table));
  Table bracket{"sweep_bracket", {"expected_slope", "bracket_lower", "bracket_upper"}, {}};
  bracket.add_row({r.expected_slope, bracket_lo, bracket_hi});
  report.tables.push_back(std::move(bracket));
  report.check("slope_within_tolerance", std::abs(r.slope - r.expected_slope) <= r.tolerance,
               r.slope, r.expected_slope);
  const double excluded = std::max({0.0, r.slope_lower - r.expected_slope,
                                    r.expected_slope - r.slope_upper});
  report.check("slope_interval_near_expected", excluded <= 0.15, excluded, 0.15);
  return report;
}

// ---------------------------------------------------------------------------

Report run_lq_medians(const ExperimentConfig& c) {
  c.validate();
  Report report;
  report.experiment = "lq";
  const std::uint64_t seed = ensemble::derive_seed(c.seed, kTagLq);
  Table table{"lq",
              {"h", "q", "n_modes", "nodes", "mc_mean_pow", "mc_stderr_pow", "exact_pow", "z",
               "median", "median_lower", "median_upper", "bqh", "bqh_limit", "chebyshev_bound"},
              {}};
  std::vector<std::vector<double>> limit_gap(c.q.size());
  for (std::size_t hi = 0; hi < c.h.size(); ++hi) {
    const double h = c.h[hi];
    const auto cluster = spectral::enumerate_cluster(c.manifold, c.window, h);
    const auto sub = curves::build_submanifold(c.manifold, c.submanifold);
    const auto rule = curves::quadrature(sub, cluster.max_frequency());
    const ensemble::RestrictionOperator op(cluster, sub, rule);
    const auto norms = sample_lq_norms(op, c.q, c.lq_samples, seed, c.workers);
    const auto n = static_cast<std::int64_t>(cluster.dimension());
    for (std::size_t qi = 0; qi < c.q.size(); ++qi) {
      const double q = c.q[qi];
      std::vector<double> powered(norms[qi].size());
      for (std::size_t i = 0; i < powered.size(); ++i) powered[i] = std::pow(norms[qi][i], q);
      const auto est = stats::mean_and_stderr(powered);
      const double profile = profile_integral(cluster, sub, rule, q);
      const double exact_pow = exactstats::bqh_moment(q, n, profile);
      const double z = est.standard_error > 0.0 ? (est.mean - exact_pow) / est.standard_error : 0.0;
      const auto sorted = sorted_copy(norms[qi]);
      const double median = stats::median_sorted(sorted);
      const auto ci = stats::median_interval_sorted(sorted);
      const double b = std::pow(exact_pow, 1.0 / q);
      const double limit = exactstats::bqh_sharp_limit(q, sub.volume(), c.manifold.volume());
      const double cheb = std::pow(2.0, 1.0 / q) * b;
      table.add_row({h, q, n, static_cast<std::int64_t>(rule.size()), est.mean,
                     est.standard_error, exact_pow, z, median, ci.lower, ci.upper, b, limit,
                     cheb});
      const std::string where = tag(h) + " q=" + fmt(q);
      report.check("lq_moment_z " + where, std::abs(z) <= kZLimit, z, kZLimit);
      report.check("lq_median_below_chebyshev " + where, ci.lower <= cheb, median, cheb);
      report.check("lq_median_above_half_limit " + where, ci.upper >= 0.5 * limit, median,
                   0.5 * limit);
      if (hi == 0 && est.standard_error > 0.0) {
        const double corrupted = exactstats::bqh_moment(q, n, profile * c.corrupt_ns_factor);
        const double zc = (est.mean - corrupted) / est.standard_error;
        report.check("negative_control_detected " + where, std::abs(zc) > kZLimit, zc, kZLimit);
      }
      limit_gap[qi].push_back(std::abs(b / limit - 1.0));
    }
  }
  report.tables.push_back(std::move(table));
  for (std::size_t qi = 0; qi < c.q.size(); ++qi) {
    const auto& g = limit_gap[qi];
    if (g.size() < 2) continue;
    bool monotone = true;
    for (std::size_t i = 1; i < g.size(); ++i) monotone = monotone && g[i] <= g[i - 1] + kRoundingSlack;
    report.check("bqh_approaches_limit q=" + fmt(c.q[qi]), monotone, g.back(), g.front());
  }
  return report;
}

// ---------------------------------------------------------------------------

Report run_deterministic_examples() {
  Report report;
  report.experiment = "det-examples";
  const auto sphere = spectral::Manifold::round_sphere();

  // Meridian arc of length 1 centred on the north pole.
  {
    curves::SubmanifoldSpec spec;
    spec.kind = curves::SubmanifoldKind::kSphereGreatArc;
    spec.closed = false;
    spec.e1 = {0.0, 0.0, 1.0};
    spec.e2 = {1.0, 0.0, 0.0};
    spec.start = -0.5;
    spec.length = 1.0;
    const auto arc = curves::build_submanifold(sphere, spec);
    Table table{"det_meridian", {"l", "h", "period"}, {}};
    std::vector<double> log_h;
    std::vector<double> log_p;
    for (int l : {25, 36, 50, 71, 100, 141, 200, 283, 400}) {
      const double h = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
      const double period = std::abs(converged_zonal_period(arc, l));
      table.add_row({static_cast<std::int64_t>(l), h, period});
      log_h.push_back(std::log(h));
      log_p.push_back(std::log(period));
    }
    const double slope = stats::fit_line(log_h, log_p).slope;
    table.add_row({std::string("fit"), Cell{}, slope});
    report.tables.push_back(std::move(table));
    report.check("meridian_slope", std::abs(slope - 0.5) <= 0.15, slope, 0.5);
  }

  // Equator.
  {
    curves::SubmanifoldSpec spec;
    spec.kind = curves::SubmanifoldKind::kSphereLatitudeCircle;
    spec.colatitude = 0.5 * kPi;
    const auto equator = curves::build_submanifold(sphere, spec);
    Table table{"det_equator", {"l", "period"}, {}};
    for (int l = 2; l <= 400; l += l < 100 ? 14 : 25) {
      for (int parity = 0; parity < 2; ++parity) {
        const int ll = l + parity;
        const double period = std::abs(converged_zonal_period(equator, ll));
        table.add_row({static_cast<std::int64_t>(ll), period});
        if (ll % 2 == 1) {
          report.check("equator_odd_vanishes l=" + std::to_string(ll), period <= 1e-10, period,
                       1e-10);
        } else if (ll >= 100) {
          report.check("equator_even_near_two l=" + std::to_string(ll),
                       std::abs(period - 2.0) <= 0.1, period, 2.0);
        }
      }
    }
    const double p200 = std::abs(converged_zonal_period(equator, 200));
    report.check("equator_l200", std::abs(p200 - 2.0) < 0.1, p200, 2.0);
    report.tables.push_back(std::move(table));
  }

  // Short torus segment: |∫_0^L e^{int} dt| = |e^{inL} - 1| / n <= 2 / n.
  {
    const auto torus = spectral::Manifold::flat_torus(2);
    curves::SubmanifoldSpec spec;
    spec.kind = curves::SubmanifoldKind::kTorusLine;
    spec.closed = false;
    spec.direction = {1.0, 0.0, 0.0};
    spec.length = 1.0;
    const auto segment = curves::build_submanifold(torus, spec);
    Table table{"det_segment", {"n", "length", "period", "closed_form", "bound"}, {}};
    for (int n : {1, 2, 3, 5, 10, 20, 50, 100}) {
      const double value =
          std::abs(periods::torus_period(torus, {n, 0, 0}, segment)) * std::sqrt(torus.volume());
      const double closed =
          std::abs(std::polar(1.0, static_cast<double>(n) * spec.length) - 1.0) / n;
      const double bound = 2.0 / n;
      table.add_row({static_cast<std::int64_t>(n), spec.length, value, closed, bound});
      report.check("segment_bound n=" + std::to_string(n),
                   value <= bound && std::abs(value - closed) <= 1e-12, value, bound);
    }
    report.tables.push_back(std::move(table));
  }

  // h E(h, γ) -> 2 for a coordinate geodesic on T².
  {
    const auto torus = spectral::Manifold::flat_torus(2);
    curves::SubmanifoldSpec spec;
    const auto line = curves::build_submanifold(torus, spec);
    const auto data = periods::kuznecov_cumulative(torus, line, 1.0 / 500.0, 16);
    Table table{"det_kuznecov", {"h", "E", "hE"}, {}};
    for (const auto& pt : data) table.add_row({pt.h, pt.value, pt.h * pt.value});
    report.tables.push_back(std::move(table));
    const double last = data.back().h * data.back().value;
    report.check("kuznecov_hE_limit", std::abs(last - 2.0) <= 0.02 * 2.0, last, 2.0);
  }
  return report;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"modes", "period", "moments", "tail",
                                              "concentration", "sweep", "lq", "det-examples"};
  return names;
}

Report run_named(const std::string& name, const ExperimentConfig& config) {
  if (name == "modes") return run_modes(config);
  if (name == "period") return run_period(config);
  if (name == "moments") return run_moments(config);
  if (name == "tail") return run_tail(config);
  if (name == "concentration") return run_concentration(config);
  if (name == "sweep") return run_scaling_sweep(config);
  if (name == "lq") return run_lq_medians(config);
  if (name == "det-examples") return run_deterministic_examples();
  throw Error(ErrorCode::kInvalidArgument, "unknown experiment '" + name + "'");
}

}  // namespace wavestat::experiments
