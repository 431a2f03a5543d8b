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

#include "wavestat/wavestat.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "config.hpp"
#include "curves.hpp"
#include "ensemble.hpp"
#include "error.hpp"
#include "exactstats.hpp"
#include "experiments.hpp"
#include "periods.hpp"
#include "spectral.hpp"

struct ws_config {
  wavestat::experiments::ExperimentConfig value;
};

struct ws_report {
  wavestat::experiments::Report value;
};

struct ws_cluster {
  wavestat::spectral::Cluster value;
};

struct ws_submanifold {
  wavestat::curves::Submanifold value;
};

namespace {

using wavestat::Error;
using wavestat::ErrorCode;
namespace ex = wavestat::exactstats;

thread_local std::string g_last_error;

ws_status fail(ws_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
ws_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return WS_OK;
  } catch (const Error& e) {
    return fail(static_cast<ws_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(WS_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(WS_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(WS_INTERNAL_ERROR, "unknown exception");
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw Error(ErrorCode::kInvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wavestat::spectral::SpectralWindow make_window(double a, double width) {
  wavestat::spectral::SpectralWindow w;
  w.a = a;
  w.width = width;
  w.validate();
  return w;
}

const wavestat::experiments::Table* table_at(const ws_report* r, size_t t) {
  if (r == nullptr || t >= r->value.tables.size()) return nullptr;
  return &r->value.tables[t];
}

void write_complex(const std::vector<std::complex<double>>& values, double* out) {
  for (std::size_t j = 0; j < values.size(); ++j) {
    out[2 * j] = values[j].real();
    out[2 * j + 1] = values[j].imag();
  }
}

template <typename Mutate>
ws_status update_config(ws_config* config, Mutate&& mutate) {
  return guarded([&] {
    require(config != nullptr, "config must not be null");
    auto next = config->value;
    mutate(next);
    next.validate();
    config->value = std::move(next);
  });
}

template <typename Fn>
ws_status scalar(double* out, Fn&& fn) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = fn();
  });
}

}  // namespace

extern "C" {

const char* ws_status_string(ws_status status) {
  switch (status) {
    case WS_OK: return "OK";
    case WS_INTERNAL_ERROR: return "InternalError";
    default: break;
  }
  if (status >= WS_INVALID_ARGUMENT && status <= WS_IO_ERROR) {
    return wavestat::error_code_name(static_cast<ErrorCode>(status));
  }
  return "Unknown";
}

const char* ws_last_error(void) { return g_last_error.c_str(); }

const char* ws_version(void) { return WAVESTAT_VERSION; }

void ws_string_free(char* s) { delete[] s; }

// ---- config ----------------------------------------------------------------

ws_status ws_config_default(ws_config** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = new ws_config{};
  });
}

ws_status ws_config_parse(const char* json, ws_config** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "json and out must not be null");
    auto parsed = wavestat::experiments::parse_config(json);
    *out = new ws_config{std::move(parsed)};
  });
}

ws_status ws_config_to_json(const ws_config* config, char** out_json) {
  return guarded([&] {
    require(config != nullptr && out_json != nullptr, "config and out must not be null");
    *out_json = copy_string(wavestat::experiments::config_to_json(config->value));
  });
}

ws_status ws_config_set_h(ws_config* config, const double* h, size_t count) {
  return update_config(config, [&](auto& c) {
    require(h != nullptr || count == 0, "h must not be null");
    c.h.assign(h, h + count);
  });
}

ws_status ws_config_set_sweep_h(ws_config* config, const double* h, size_t count) {
  return update_config(config, [&](auto& c) {
    require(h != nullptr || count == 0, "h must not be null");
    c.sweep_h.assign(h, h + count);
  });
}

ws_status ws_config_set_width(ws_config* config, double width) {
  return update_config(config, [&](auto& c) { c.window.width = width; });
}

ws_status ws_config_set_p(ws_config* config, const double* p, size_t count) {
  return update_config(config, [&](auto& c) {
    require(p != nullptr || count == 0, "p must not be null");
    c.p.assign(p, p + count);
  });
}

ws_status ws_config_set_q(ws_config* config, const double* q, size_t count) {
  return update_config(config, [&](auto& c) {
    require(q != nullptr || count == 0, "q must not be null");
    c.q.assign(q, q + count);
  });
}

ws_status ws_config_set_samples(ws_config* config, int64_t samples) {
  return update_config(config, [&](auto& c) {
    c.samples = samples;
    c.lq_samples = samples;
  });
}

ws_status ws_config_set_seed(ws_config* config, uint64_t seed) {
  return update_config(config, [&](auto& c) { c.seed = seed; });
}

ws_status ws_config_set_workers(ws_config* config, int workers) {
  return update_config(config, [&](auto& c) { c.workers = workers; });
}

uint64_t ws_config_seed(const ws_config* config) { return config ? config->value.seed : 0; }

int ws_config_workers(const ws_config* config) { return config ? config->value.workers : 0; }

void ws_config_destroy(ws_config* config) { delete config; }

// ---- reports ---------------------------------------------------------------

ws_status ws_run(const char* experiment, const ws_config* config, ws_report** out) {
  return guarded([&] {
    require(experiment != nullptr && config != nullptr && out != nullptr,
            "experiment, config and out must not be null");
    auto report = wavestat::experiments::run_named(experiment, config->value);
    *out = new ws_report{std::move(report)};
  });
}

size_t ws_experiment_count(void) { return wavestat::experiments::experiment_names().size(); }

const char* ws_experiment_name(size_t index) {
  const auto& names = wavestat::experiments::experiment_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

const char* ws_report_experiment(const ws_report* report) {
  return report ? report->value.experiment.c_str() : nullptr;
}

int ws_report_passed(const ws_report* report) { return report && report->value.passed() ? 1 : 0; }

size_t ws_report_table_count(const ws_report* report) {
  return report ? report->value.tables.size() : 0;
}

const char* ws_report_table_name(const ws_report* report, size_t table) {
  const auto* t = table_at(report, table);
  return t ? t->name.c_str() : nullptr;
}

size_t ws_report_column_count(const ws_report* report, size_t table) {
  const auto* t = table_at(report, table);
  return t ? t->columns.size() : 0;
}

const char* ws_report_column_name(const ws_report* report, size_t table, size_t column) {
  const auto* t = table_at(report, table);
  return t && column < t->columns.size() ? t->columns[column].c_str() : nullptr;
}

size_t ws_report_row_count(const ws_report* report, size_t table) {
  const auto* t = table_at(report, table);
  return t ? t->rows.size() : 0;
}

ws_cell_kind ws_report_cell(const ws_report* report, size_t table, size_t row, size_t column,
                            int64_t* as_int, double* as_real, const char** as_text) {
  const auto* t = table_at(report, table);
  if (t == nullptr || row >= t->rows.size() || column >= t->rows[row].size()) {
    return WS_CELL_EMPTY;
  }
  const auto& cell = t->rows[row][column];
  if (const auto* i = std::get_if<std::int64_t>(&cell)) {
    if (as_int) *as_int = *i;
    return WS_CELL_INT;
  }
  if (const auto* d = std::get_if<double>(&cell)) {
    if (as_real) *as_real = *d;
    return WS_CELL_REAL;
  }
  if (const auto* s = std::get_if<std::string>(&cell)) {
    if (as_text) *as_text = s->c_str();
    return WS_CELL_TEXT;
  }
  return WS_CELL_EMPTY;
}

size_t ws_report_check_count(const ws_report* report) {
  return report ? report->value.checks.size() : 0;
}

ws_status ws_report_check(const ws_report* report, size_t index, const char** name, int* passed,
                          double* value, double* threshold) {
  return guarded([&] {
    require(report != nullptr && index < report->value.checks.size(), "check index out of range");
    const auto& c = report->value.checks[index];
    if (name) *name = c.name.c_str();
    if (passed) *passed = c.passed ? 1 : 0;
    if (value) *value = c.value;
    if (threshold) *threshold = c.threshold;
  });
}

void ws_report_destroy(ws_report* report) { delete report; }

// ---- clusters --------------------------------------------------------------

ws_status ws_cluster_create(const char* manifold, double a, double width, double h,
                            ws_cluster** out) {
  return guarded([&] {
    require(manifold != nullptr && out != nullptr, "manifold and out must not be null");
    const auto m = wavestat::experiments::parse_manifold_name(manifold);
    *out = new ws_cluster{wavestat::spectral::enumerate_cluster(m, make_window(a, width), h)};
  });
}

size_t ws_cluster_dimension(const ws_cluster* cluster) {
  return cluster ? cluster->value.dimension() : 0;
}

ws_status ws_cluster_mode(const ws_cluster* cluster, size_t index, int label[3],
                          int64_t* frequency_squared) {
  return guarded([&] {
    require(cluster != nullptr && index < cluster->value.modes.size(), "mode index out of range");
    const auto& mode = cluster->value.modes[index];
    if (label) {
      for (int i = 0; i < 3; ++i) label[i] = mode.label[i];
    }
    if (frequency_squared) *frequency_squared = mode.frequency_squared;
  });
}

ws_status ws_cluster_evaluate(const ws_cluster* cluster, const double point[3],
                              double* out_re_im) {
  return guarded([&] {
    require(cluster != nullptr && point != nullptr && out_re_im != nullptr,
            "arguments must not be null");
    wavestat::spectral::Point x;
    for (int i = 0; i < 3; ++i) x.coords[i] = point[i];
    write_complex(wavestat::spectral::evaluate_modes_at_point(cluster->value, x), out_re_im);
  });
}

void ws_cluster_destroy(ws_cluster* cluster) { delete cluster; }

ws_status ws_cluster_count(const char* manifold, double a, double width, double h, int64_t* out) {
  return guarded([&] {
    require(manifold != nullptr && out != nullptr, "manifold and out must not be null");
    const auto m = wavestat::experiments::parse_manifold_name(manifold);
    *out = wavestat::spectral::count_cluster(m, make_window(a, width), h);
  });
}

ws_status ws_weyl_prediction(const char* manifold, double a, double width, double h,
                             double* out) {
  return guarded([&] {
    require(manifold != nullptr && out != nullptr, "manifold and out must not be null");
    const auto m = wavestat::experiments::parse_manifold_name(manifold);
    *out = wavestat::spectral::weyl_prediction(m, make_window(a, width), h);
  });
}

// ---- submanifolds ----------------------------------------------------------

ws_status ws_submanifold_create(const char* manifold, const char* json, ws_submanifold** out) {
  return guarded([&] {
    require(manifold != nullptr && json != nullptr && out != nullptr,
            "arguments must not be null");
    const auto m = wavestat::experiments::parse_manifold_name(manifold);
    const auto spec = wavestat::experiments::parse_submanifold(json, m);
    *out = new ws_submanifold{wavestat::curves::build_submanifold(m, spec)};
  });
}

double ws_submanifold_volume(const ws_submanifold* sub) { return sub ? sub->value.volume() : 0.0; }

void ws_submanifold_destroy(ws_submanifold* sub) { delete sub; }

ws_status ws_period_vector(const ws_cluster* cluster, const ws_submanifold* sub,
                           double* out_re_im, double* norm_sq) {
  return guarded([&] {
    require(cluster != nullptr && sub != nullptr && out_re_im != nullptr,
            "arguments must not be null");
    const auto pv = wavestat::periods::period_vector(cluster->value, sub->value);
    write_complex(pv.components, out_re_im);
    if (norm_sq) *norm_sq = pv.squared_norm;
  });
}

// ---- sampling --------------------------------------------------------------

ws_status ws_sample_coefficients(size_t n, uint64_t seed, uint64_t index, double* out_re_im) {
  return guarded([&] {
    require(out_re_im != nullptr, "out must not be null");
    write_complex(wavestat::ensemble::sample_coefficients(n, seed, index).z, out_re_im);
  });
}

// ---- exact laws ------------------------------------------------------------

ws_status ws_survival_exact(double lambda, int64_t modes, double norm_sq, double* out) {
  return scalar(out, [&] { return ex::survival_exact(lambda, {modes, norm_sq}); });
}

ws_status ws_moment_exact(double p, int64_t modes, double norm_sq, double* out) {
  return scalar(out, [&] { return ex::moment_exact(p, {modes, norm_sq}); });
}

ws_status ws_median_exact(int64_t modes, double norm_sq, double* out) {
  return scalar(out, [&] { return ex::median_exact({modes, norm_sq}); });
}

ws_status ws_lipschitz_const_period(double p, double norm_sq, double* out) {
  return scalar(out, [&] { return ex::lipschitz_const_period(p, norm_sq); });
}

ws_status ws_concentration_bound_period(double r, double p, int64_t modes, double norm_sq,
                                        double* derived, double* stated) {
  return guarded([&] {
    const auto b = ex::concentration_bound_period(r, p, {modes, norm_sq});
    if (derived) *derived = b.derived_value;
    if (stated) *stated = b.stated_value;
  });
}

ws_status ws_mean_median_gap_bound(double p, int64_t modes, double norm_sq, double* out) {
  return scalar(out, [&] { return ex::mean_median_gap_bound(p, {modes, norm_sq}); });
}

ws_status ws_renormalized_bound(double r, double p, int64_t modes, double norm_sq, double* out) {
  return scalar(out, [&] { return ex::renormalized_bound(r, p, {modes, norm_sq}); });
}

ws_status ws_bqh_exact(double q, int64_t modes, double profile_integral, double* out) {
  return scalar(out, [&] { return ex::bqh_exact(q, modes, profile_integral); });
}

ws_status ws_bqh_sharp_limit(double q, double sub_volume, double manifold_volume, double* out) {
  return scalar(out, [&] { return ex::bqh_sharp_limit(q, sub_volume, manifold_volume); });
}

ws_status ws_delta_exponent(double q, double* out) {
  return scalar(out, [&] { return ex::delta_exponent(q); });
}

ws_status ws_log_gamma(double x, double* out) {
  return scalar(out, [&] { return ex::log_gamma(x); });
}

ws_status ws_log_beta(double a, double b, double* out) {
  return scalar(out, [&] { return ex::log_beta(a, b); });
}

}  // extern "C"
