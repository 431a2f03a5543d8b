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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "csv_io.hpp"
#include "experiments.hpp"
#include "special_functions.hpp"

namespace {

using wavestat::experiments::Check;
using wavestat::experiments::ExperimentConfig;
using wavestat::experiments::parse_config;
using wavestat::experiments::Report;
namespace ex = wavestat::experiments;

struct Outcome {
  std::vector<Check> checks;
  std::string summary;
};

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

void take(Outcome& out, const Report& report, const std::vector<std::string>& prefixes) {
  for (const auto& check : report.checks) {
    for (const auto& prefix : prefixes) {
      if (starts_with(check.name, prefix)) {
        out.checks.push_back(check);
        break;
      }
    }
  }
  for (const auto& prefix : prefixes) {
    bool found = false;
    for (const auto& check : report.checks) found = found || starts_with(check.name, prefix);
    if (!found) out.checks.push_back({report.experiment + ": missing check " + prefix, false, 0.0, 0.0});
  }
}

double value_of(const Report& report, const std::string& name) {
  for (const auto& check : report.checks) {
    if (check.name == name) return check.value;
  }
  return std::nan("");
}

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", v);
  return buffer;
}

std::string serialize_report(const Report& report) {
  std::string all;
  for (const auto& table : report.tables) {
    wavestat::csv::Document doc;
    doc.header = table.columns;
    for (const auto& row : table.rows) {
      std::vector<wavestat::csv::Field> fields(row.begin(), row.end());
      doc.rows.push_back(std::move(fields));
    }
    all += table.name + ".csv\n" + wavestat::csv::serialize(doc);
  }
  return all;
}

// ---------------------------------------------------------------------------

ExperimentConfig torus2(const std::string& extra) {
  return parse_config(R"({"schema_version": 1, "manifold": "torus2", "seed": 7)" + extra + "}");
}

Outcome cdf_law() {
  Outcome out;
  const auto c = torus2(R"(, "h": [0.1], "samples": 100000)");
  const auto report = ex::run_tail(c);
  take(out, report, {"ks_within_threshold", "negative_control_detected"});
  const auto tail = ex::tail_report(c);
  out.summary = "KS " + fmt(tail.ks_distance) + " <= " + fmt(tail.ks_threshold) +
                ", corrupted KS " + fmt(tail.corrupted_ks_distance);
  return out;
}

Outcome exact_moments() {
  Outcome out;
  const auto c = torus2(R"(, "h": [0.1], "p": [1, 2, 3], "samples": 100000)");
  const auto report = ex::run_moments(c);
  take(out, report, {"moment_z", "symmetry_oracle_z"});
  out.summary = "z(p=1,2,3) = " + fmt(value_of(report, "moment_z h=0.1 p=1")) + ", " +
                fmt(value_of(report, "moment_z h=0.1 p=2")) + ", " +
                fmt(value_of(report, "moment_z h=0.1 p=3"));
  return out;
}

Outcome scaling() {
  Outcome out;
  const auto t2 = ex::run_scaling_sweep(torus2(R"(, "h": [0.1])"));
  take(out, t2, {"slope_within_tolerance"});
  const auto t3 = ex::run_scaling_sweep(parse_config(R"({"schema_version": 1, "manifold": "torus3",
      "h": [0.05], "submanifold": {"kind": "torus_subtorus", "fixed": {"x3": 0.0}}})"));
  take(out, t3, {"slope_within_tolerance"});
  out.summary = "T2 curve slope " + fmt(value_of(t2, "slope_within_tolerance")) +
                ", T3 subtorus slope " + fmt(value_of(t3, "slope_within_tolerance"));
  return out;
}

Outcome counting() {
  Outcome out;
  const auto c = torus2(R"(, "h": [0.02, 0.01, 0.005, 0.0033333333333333335, 0.0025, 0.002],
      "kuznecov_h_min": 0.002)");
  take(out, ex::run_modes(c), {"enumeration_matches_count", "weyl_bracket"});
  take(out, ex::run_period(c), {"period_norm_matches_count"});
  const auto det = ex::run_deterministic_examples();
  take(out, det, {"kuznecov_hE_limit"});
  out.summary = "h E(h) at 1/500 = " + fmt(value_of(det, "kuznecov_hE_limit"));
  return out;
}

Outcome concentration_and_lipschitz(Outcome& lipschitz) {
  Outcome out;
  const auto c = torus2(R"(, "h": [0.1], "p": [1, 2, 3], "q": [2], "samples": 100000,
      "lq_samples": 200, "lipschitz_pairs": 1000)");
  const auto report = ex::run_concentration(c);
  take(out, report, {"period_exceedance_below_bound", "mean_median_gap"});
  take(lipschitz, report, {"lipschitz_violations p=1", "lipschitz_violations p=2",
                           "lipschitz_violations p=3"});
  out.summary = "gap " + fmt(value_of(report, "mean_median_gap h=0.1"));
  lipschitz.summary = "1000 pairs, p = 1, 2, 3";
  return out;
}

Outcome restricted_lq() {
  Outcome out;
  const auto c = torus2(R"(, "h": [0.05, 0.0125, 0.003125], "q": [2, 4, 6], "samples": 1000,
      "lq_samples": 10000)");
  take(out, ex::run_lq_medians(c),
       {"lq_moment_z", "lq_median_below_chebyshev", "lq_median_above_half_limit"});
  const auto conc = ex::run_concentration(c);
  take(out, conc, {"lq_rate_exponent q=2"});
  out.summary = "q=2 rate exponent " + fmt(value_of(conc, "lq_rate_exponent q=2"));
  return out;
}

Outcome deterministic() {
  Outcome out;
  const auto report = ex::run_deterministic_examples();
  take(out, report, {"meridian_slope", "equator_even_near_two", "equator_odd_vanishes",
                     "segment_bound"});
  out.summary = "meridian slope " + fmt(value_of(report, "meridian_slope"));
  return out;
}

Outcome numerics() {
  using Float50 = boost::multiprecision::cpp_bin_float_50;
  Outcome out;
  double worst_gamma = 0.0;
  double worst_beta = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 0.5 * std::pow(2e6, i / 999.0);
    const double a = 0.5 * std::pow(2e6, ((i * 37) % 1000) / 999.0);
    const double lg = static_cast<double>(boost::multiprecision::lgamma(Float50(x)));
    worst_gamma = std::max(worst_gamma, std::abs(wavestat::exactstats::log_gamma(x) - lg) /
                                            std::max(std::abs(lg), 1e-300));
    const double lb = static_cast<double>(boost::multiprecision::lgamma(Float50(a)) +
                                          boost::multiprecision::lgamma(Float50(x)) -
                                          boost::multiprecision::lgamma(Float50(a) + Float50(x)));
    worst_beta = std::max(worst_beta, std::abs(wavestat::exactstats::log_beta(a, x) - lb) /
                                          std::max(std::abs(lb), 1e-300));
  }
  out.checks.push_back({"log_gamma_relative_error", worst_gamma <= 1e-12, worst_gamma, 1e-12});
  out.checks.push_back({"log_beta_relative_error", worst_beta <= 1e-12, worst_beta, 1e-12});

  const std::vector<ExperimentConfig> setups = {
      torus2(R"(, "h": [0.1, 0.02])"),
      torus2(R"(, "h": [0.1, 0.02], "submanifold": {"kind": "torus_line", "direction": [1, 1], "closed": true})"),
      torus2(R"(, "h": [0.1, 0.02], "submanifold": {"kind": "torus_line", "direction": [2, -3], "closed": true})"),
      torus2(R"(, "h": [0.1, 0.02], "submanifold": {"kind": "torus_line", "direction": [1, 0.5], "closed": false, "length": 2.5})"),
      parse_config(R"({"schema_version": 1, "manifold": "torus3", "h": [0.1],
          "submanifold": {"kind": "torus_subtorus", "fixed": {"x3": 0.3}}})"),
  };
  double worst_period = 0.0;
  for (const auto& c : setups) {
    const auto report = ex::run_period(c);
    take(out, report, {"closed_form_vs_quadrature"});
    for (const auto& check : report.checks) {
      if (starts_with(check.name, "closed_form_vs_quadrature")) worst_period = std::max(worst_period, check.value);
    }
  }
  out.summary = "log_gamma " + fmt(worst_gamma) + ", log_beta " + fmt(worst_beta) +
                ", period components " + fmt(worst_period);
  return out;
}

Outcome reproducibility() {
  Outcome out;
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"moments", R"(, "h": [0.1, 0.05], "samples": 20000)"},
      {"tail", R"(, "h": [0.1], "samples": 20000)"},
      {"concentration", R"(, "h": [0.1, 0.05], "q": [2, 4], "samples": 5000, "lq_samples": 500)"},
      {"lq", R"(, "h": [0.1, 0.05], "q": [2, 4], "samples": 1000, "lq_samples": 1000)"},
  };
  for (const auto& [name, extra] : runs) {
    auto one = torus2(extra);
    auto many = one;
    one.workers = 1;
    many.workers = 8;
    const std::string a = serialize_report(ex::run_named(name, one));
    const std::string b = serialize_report(ex::run_named(name, many));
    out.checks.push_back({"byte_identical " + name, a == b && !a.empty(), static_cast<double>(a.size()),
                          static_cast<double>(b.size())});
  }
  out.summary = "workers 1 vs 8 on moments, tail, concentration, lq";
  return out;
}

}  // namespace

int main() {
  Outcome lipschitz;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"CDF law of F1", cdf_law},
      {"exact moments", exact_moments},
      {"scaling of the mean period", scaling},
      {"counting inputs", counting},
      {"concentration", [&] { return concentration_and_lipschitz(lipschitz); }},
      {"Lipschitz property", [&] { return lipschitz; }},
      {"restricted L^q", restricted_lq},
      {"deterministic saturations", deterministic},
      {"numerics", numerics},
      {"reproducibility", reproducibility},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    std::string error;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = error.empty() && !outcome.checks.empty();
    for (const auto& check : outcome.checks) ok = ok && check.passed;
    if (!ok) ++failures;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first
              << "): " << (error.empty() ? outcome.summary : "error: " + error) << " ["
              << fmt(seconds) << " s]\n";
    for (const auto& check : outcome.checks) {
      if (!check.passed) {
        std::cout << "    failed " << check.name << " (value " << fmt(check.value) << ", threshold "
                  << fmt(check.threshold) << ")\n";
      }
    }
    std::cout.flush();
  }
  return failures == 0 ? 0 : 1;
}
