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

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "csv_io.hpp"
#include "json.hpp"
#include "wavestat/wavestat.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAssertion = 2;

constexpr const char* kSchemaHelp = R"(Config schema (JSON, schema_version 1; unknown keys are rejected):
  schema_version     1 (required)
  manifold           "torus2" | "torus3" | "sphere2"            default "torus2"
  window             {"a": 1.0, "D": 6.0}                       half-open (a, a + D h]
  h                  [0.1, ...] strictly decreasing, in (0, 1]
  submanifold        {"kind": "torus_line", "base": [..], "direction": [..], "closed": true, "length": L}
                     {"kind": "torus_subtorus", "fixed": {"x3": 0.0}}
                     {"kind": "sphere_great_arc", "e1": [..], "e2": [..], "start": t0, "length": L, "closed": false}
                     {"kind": "sphere_latitude", "colatitude": theta}
  p, q               moment orders (p >= 0) and L^q exponents (q >= 2)
  samples            Monte Carlo sample count for periods (>= 100)
  lq_samples         Monte Carlo sample count for L^q norms (>= 100)
  seed, workers      RNG seed and worker threads (output never depends on workers)
  lambda_grid, r_grid, lipschitz_pairs, corrupt_ns_factor,
  kuznecov_h_min, kuznecov_points, sweep_mc_samples
  sweep_h            h grid of the scaling sweep (>= 4 values)    default [1/20, 1/40, 1/80, 1/160, 1/320]
)";

struct Options {
  std::string config_path;
  std::vector<double> h;
  std::optional<double> width;
  std::vector<double> p;
  std::vector<double> q;
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out_dir;
};

struct ConfigDeleter {
  void operator()(ws_config* c) const noexcept { ws_config_destroy(c); }
};
struct ReportDeleter {
  void operator()(ws_report* r) const noexcept { ws_report_destroy(r); }
};
using ConfigPtr = std::unique_ptr<ws_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<ws_report, ReportDeleter>;

class StatusError : public std::runtime_error {
 public:
  StatusError(ws_status status, const std::string& context)
      : std::runtime_error(context + ": " + ws_status_string(status) + ": " + ws_last_error()),
        status_(status) {}
  ws_status status() const noexcept { return status_; }

 private:
  ws_status status_;
};

void check(ws_status status, const std::string& context) {
  if (status != WS_OK) throw StatusError(status, context);
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

void add_common_options(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  sub->add_option("--h", o.h, "semiclassical parameters, comma separated")->delimiter(',');
  sub->add_option("--D", o.width, "window width constant D");
  sub->add_option("--p", o.p, "moment orders, comma separated")->delimiter(',');
  sub->add_option("--q", o.q, "L^q exponents, comma separated")->delimiter(',');
  sub->add_option("--samples", o.samples, "Monte Carlo sample count M");
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--workers", o.workers, "worker threads");
  sub->add_option("--out", o.out_dir, "output directory (default: $WAVESTAT_OUT_DIR or ./wavestat-out)");
}

ConfigPtr build_config(const std::string& command, const Options& o) {
  ws_config* raw = nullptr;
  if (o.config_path.empty()) {
    check(ws_config_default(&raw), "default config");
  } else {
    const std::string text = wavestat::csv::read_file(o.config_path);
    check(ws_config_parse(text.c_str(), &raw), "config '" + o.config_path + "'");
  }
  ConfigPtr config(raw);
  if (!o.h.empty()) {
    // For the sweep subcommand --h names the sweep grid.
    if (command == "sweep") {
      check(ws_config_set_sweep_h(raw, o.h.data(), o.h.size()), "--h");
    } else {
      check(ws_config_set_h(raw, o.h.data(), o.h.size()), "--h");
    }
  }
  if (o.width) check(ws_config_set_width(raw, *o.width), "--D");
  if (!o.p.empty()) check(ws_config_set_p(raw, o.p.data(), o.p.size()), "--p");
  if (!o.q.empty()) check(ws_config_set_q(raw, o.q.data(), o.q.size()), "--q");
  if (o.samples) check(ws_config_set_samples(raw, *o.samples), "--samples");
  if (o.seed) check(ws_config_set_seed(raw, *o.seed), "--seed");
  if (o.workers) check(ws_config_set_workers(raw, *o.workers), "--workers");
  return config;
}

wavestat::csv::Document table_document(const ws_report* report, size_t t) {
  wavestat::csv::Document doc;
  const size_t columns = ws_report_column_count(report, t);
  for (size_t c = 0; c < columns; ++c) doc.header.emplace_back(ws_report_column_name(report, t, c));
  const size_t rows = ws_report_row_count(report, t);
  for (size_t r = 0; r < rows; ++r) {
    std::vector<wavestat::csv::Field> row;
    for (size_t c = 0; c < columns; ++c) {
      std::int64_t i = 0;
      double d = 0.0;
      const char* s = nullptr;
      switch (ws_report_cell(report, t, r, c, &i, &d, &s)) {
        case WS_CELL_INT: row.emplace_back(i); break;
        case WS_CELL_REAL: row.emplace_back(d); break;
        case WS_CELL_TEXT: row.emplace_back(std::string(s)); break;
        case WS_CELL_EMPTY: row.emplace_back(std::monostate{}); break;
      }
    }
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

wavestat::csv::Document checks_document(const ws_report* report) {
  wavestat::csv::Document doc;
  doc.header = {"check", "passed", "value", "threshold"};
  for (size_t i = 0; i < ws_report_check_count(report); ++i) {
    const char* name = nullptr;
    int passed = 0;
    double value = 0.0;
    double threshold = 0.0;
    check(ws_report_check(report, i, &name, &passed, &value, &threshold), "report check");
    doc.rows.push_back({std::string(name), static_cast<std::int64_t>(passed), value, threshold});
  }
  return doc;
}

int run(const std::string& command, const Options& o) {
  const std::string started = utc_timestamp();
  const ConfigPtr config = build_config(command, o);

  std::vector<std::string> names;
  if (command == "all") {
    for (size_t i = 0; i < ws_experiment_count(); ++i) names.emplace_back(ws_experiment_name(i));
  } else {
    names.push_back(command);
  }

  std::vector<ReportPtr> reports;
  for (const auto& name : names) {
    ws_report* raw = nullptr;
    check(ws_run(name.c_str(), config.get(), &raw), name);
    reports.emplace_back(raw);
  }

  std::string out_dir = o.out_dir;
  if (out_dir.empty()) {
    const char* env = std::getenv("WAVESTAT_OUT_DIR");
    out_dir = env != nullptr && *env != '\0' ? env : "wavestat-out";
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + out_dir + "': " + ec.message());

  char* config_json = nullptr;
  check(ws_config_to_json(config.get(), &config_json), "config echo");
  const auto config_echo = nlohmann::ordered_json::parse(config_json);
  ws_string_free(config_json);

  // Collect documents first so the manifest can list every file.
  std::vector<std::pair<std::string, wavestat::csv::Document>> files;
  nlohmann::ordered_json manifest;
  manifest["tool"] = "wavestat";
  manifest["version"] = ws_version();
  manifest["command"] = command;
  manifest["seed"] = ws_config_seed(config.get());
  manifest["workers"] = ws_config_workers(config.get());
  manifest["started_at"] = started;
  manifest["finished_at"] = utc_timestamp();
  manifest["config"] = config_echo;
  manifest["reports"] = nlohmann::ordered_json::array();
  bool all_passed = true;
  for (const auto& report : reports) {
    const ws_report* r = report.get();
    nlohmann::ordered_json entry;
    entry["experiment"] = ws_report_experiment(r);
    entry["passed"] = ws_report_passed(r) != 0;
    entry["files"] = nlohmann::ordered_json::array();
    for (size_t t = 0; t < ws_report_table_count(r); ++t) {
      const std::string file = std::string(ws_report_table_name(r, t)) + ".csv";
      entry["files"].push_back(file);
      files.emplace_back(file, table_document(r, t));
    }
    const std::string checks_file = std::string(ws_report_experiment(r)) + "_checks.csv";
    entry["files"].push_back(checks_file);
    files.emplace_back(checks_file, checks_document(r));
    manifest["reports"].push_back(entry);
    all_passed = all_passed && ws_report_passed(r) != 0;
  }

  const std::filesystem::path dir(out_dir);
  wavestat::csv::write_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
  for (const auto& [file, doc] : files) {
    wavestat::csv::write_file((dir / file).string(), wavestat::csv::serialize(doc));
  }

  for (const auto& report : reports) {
    const ws_report* r = report.get();
    for (size_t i = 0; i < ws_report_check_count(r); ++i) {
      const char* name = nullptr;
      int passed = 0;
      double value = 0.0;
      double threshold = 0.0;
      check(ws_report_check(r, i, &name, &passed, &value, &threshold), "report check");
      std::cout << (passed ? "PASS " : "FAIL ") << ws_report_experiment(r) << ": " << name
                << " (value " << value << ", threshold " << threshold << ")\n";
    }
  }
  std::cout << "wrote " << files.size() << " CSV files and manifest.json to " << out_dir << "\n";
  return all_passed ? kExitOk : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavestat: random spectral-cluster period and restriction statistics"};
  app.set_help_flag("--help", "print this help message and exit");
  app.set_version_flag("--version", std::string(ws_version()));
  app.require_subcommand(1);
  app.footer(kSchemaHelp);

  Options options;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"modes", "enumerate clusters and compare with the Weyl count"},
      {"period", "period vectors, Kuznecov weights and cumulative sums"},
      {"moments", "Monte Carlo moments of the period versus the exact law"},
      {"tail", "empirical survival function and KS test"},
      {"concentration", "deviation bounds, Lipschitz checks and L^q concentration"},
      {"sweep", "scaling of the exact mean period across h"},
      {"lq", "restricted L^q norms: moments and medians"},
      {"det-examples", "deterministic saturating examples"},
      {"all", "run every experiment"},
  };
  for (const auto& [name, description] : commands) {
    add_common_options(app.add_subcommand(name, description), options);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, options);
  } catch (const StatusError& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.status() == WS_CONFIG_ERROR) std::cerr << "\n" << kSchemaHelp;
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
