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

#include "config.hpp"

#include <cmath>
#include <set>
#include <string>

#include "error.hpp"
#include "json.hpp"

namespace wavestat::experiments {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) {
  throw Error(ErrorCode::kConfigError, message);
}

void reject_unknown(const Json& object, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!object.is_object()) fail(where + " must be a JSON object");
  for (const auto& item : object.items()) {
    if (!allowed.contains(item.key())) {
      fail("unknown key '" + item.key() + "' in " + where);
    }
  }
}

template <typename T>
T get(const Json& object, const char* key, const std::string& where) {
  try {
    return object.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(where + "." + key + ": " + e.what());
  }
}

template <typename T>
void read_optional(const Json& object, const char* key, T& out, const std::string& where) {
  if (object.contains(key)) out = get<T>(object, key, where);
}

std::array<double, 3> read_vector(const Json& object, const char* key, int dimension,
                                  const std::string& where) {
  const auto values = get<std::vector<double>>(object, key, where);
  if (values.empty() || values.size() > static_cast<std::size_t>(dimension)) {
    fail(where + "." + key + " must have 1.." + std::to_string(dimension) + " entries");
  }
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i];
  return out;
}

Json vector_json(const std::array<double, 3>& v, int dimension) {
  Json out = Json::array();
  for (int i = 0; i < dimension; ++i) out.push_back(v[static_cast<std::size_t>(i)]);
  return out;
}

curves::SubmanifoldSpec submanifold_from_json(const Json& j, const spectral::Manifold& manifold) {
  const std::string where = "submanifold";
  if (!j.is_object()) fail("submanifold must be a JSON object");
  const auto kind = get<std::string>(j, "kind", where);
  curves::SubmanifoldSpec spec;
  const int dim = manifold.is_torus() ? manifold.dimension() : 3;
  if (kind == "torus_line") {
    reject_unknown(j, {"kind", "base", "direction", "closed", "length"}, where);
    spec.kind = curves::SubmanifoldKind::kTorusLine;
    if (j.contains("base")) spec.base = read_vector(j, "base", dim, where);
    if (j.contains("direction")) spec.direction = read_vector(j, "direction", dim, where);
    read_optional(j, "closed", spec.closed, where);
    read_optional(j, "length", spec.length, where);
  } else if (kind == "torus_subtorus") {
    reject_unknown(j, {"kind", "fixed"}, where);
    spec.kind = curves::SubmanifoldKind::kTorusSubtorus;
    const Json& fixed = j.at("fixed");
    if (!fixed.is_object()) fail("submanifold.fixed must map x1/x2/x3 to values");
    for (const auto& item : fixed.items()) {
      const std::string& name = item.key();
      if (name.size() != 2 || name[0] != 'x' || name[1] < '1' || name[1] > '3') {
        fail("submanifold.fixed key must be x1, x2 or x3, got '" + name + "'");
      }
      if (!item.value().is_number()) fail("submanifold.fixed." + name + " must be a number");
      spec.fixed.push_back({name[1] - '1', item.value().get<double>()});
    }
  } else if (kind == "sphere_great_arc") {
    reject_unknown(j, {"kind", "e1", "e2", "start", "length", "closed"}, where);
    spec.kind = curves::SubmanifoldKind::kSphereGreatArc;
    spec.closed = false;
    if (j.contains("e1")) spec.e1 = read_vector(j, "e1", 3, where);
    if (j.contains("e2")) spec.e2 = read_vector(j, "e2", 3, where);
    read_optional(j, "start", spec.start, where);
    read_optional(j, "length", spec.length, where);
    read_optional(j, "closed", spec.closed, where);
  } else if (kind == "sphere_latitude") {
    reject_unknown(j, {"kind", "colatitude"}, where);
    spec.kind = curves::SubmanifoldKind::kSphereLatitudeCircle;
    read_optional(j, "colatitude", spec.colatitude, where);
  } else {
    fail("unknown submanifold kind '" + kind +
         "' (expected torus_line, torus_subtorus, sphere_great_arc or sphere_latitude)");
  }
  try {
    (void)curves::build_submanifold(manifold, spec);
  } catch (const Error& e) {
    fail(std::string("invalid submanifold: ") + e.what());
  }
  return spec;
}

Json submanifold_to_json(const curves::SubmanifoldSpec& spec, const spectral::Manifold& manifold) {
  Json j;
  const int dim = manifold.is_torus() ? manifold.dimension() : 3;
  switch (spec.kind) {
    case curves::SubmanifoldKind::kTorusLine:
      j["kind"] = "torus_line";
      j["base"] = vector_json(spec.base, dim);
      j["direction"] = vector_json(spec.direction, dim);
      j["closed"] = spec.closed;
      if (!spec.closed) j["length"] = spec.length;
      break;
    case curves::SubmanifoldKind::kTorusSubtorus: {
      j["kind"] = "torus_subtorus";
      Json fixed = Json::object();
      for (const auto& f : spec.fixed) fixed["x" + std::to_string(f.axis + 1)] = f.value;
      j["fixed"] = fixed;
      break;
    }
    case curves::SubmanifoldKind::kSphereGreatArc:
      j["kind"] = "sphere_great_arc";
      j["e1"] = vector_json(spec.e1, 3);
      j["e2"] = vector_json(spec.e2, 3);
      j["start"] = spec.start;
      j["length"] = spec.length;
      j["closed"] = spec.closed;
      break;
    case curves::SubmanifoldKind::kSphereLatitudeCircle:
      j["kind"] = "sphere_latitude";
      j["colatitude"] = spec.colatitude;
      break;
  }
  return j;
}

}  // namespace

spectral::Manifold parse_manifold_name(const std::string& name) {
  if (name == "torus2") return spectral::Manifold::flat_torus(2);
  if (name == "torus3") return spectral::Manifold::flat_torus(3);
  if (name == "sphere2") return spectral::Manifold::round_sphere();
  fail("unknown manifold '" + name + "' (expected torus2, torus3 or sphere2)");
}

namespace {

void check_h_list(const std::vector<double>& h, const std::string& key, std::size_t min_size) {
  if (h.size() < min_size) fail(key + " needs at least " + std::to_string(min_size) + " value(s)");
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0 && h[i] <= 1.0)) fail("every " + key + " value must lie in (0, 1]");
    if (i > 0 && !(h[i] < h[i - 1])) fail(key + " must be strictly decreasing");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    window.validate();
  } catch (const Error& e) {
    fail(std::string("window: ") + e.what());
  }
  check_h_list(h, "h", 1);
  check_h_list(sweep_h, "sweep_h", 4);
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) fail("every p must be finite and >= 0");
  }
  for (double v : q) {
    if (!(v >= 2.0) || !std::isfinite(v)) fail("every q must be finite and >= 2");
  }
  if (samples < 100) fail("samples must be >= 100");
  if (lq_samples < 100) fail("lq_samples must be >= 100");
  if (workers < 1) fail("workers must be >= 1");
  if (lambda_grid < 2) fail("lambda_grid must be >= 2");
  if (r_grid < 1) fail("r_grid must be >= 1");
  if (lipschitz_pairs < 1) fail("lipschitz_pairs must be >= 1");
  if (!(corrupt_ns_factor > 0.0) || corrupt_ns_factor == 1.0) {
    fail("corrupt_ns_factor must be positive and different from 1");
  }
  if (!(kuznecov_h_min > 0.0 && kuznecov_h_min <= 1.0)) fail("kuznecov_h_min must lie in (0, 1]");
  if (kuznecov_points < 1) fail("kuznecov_points must be >= 1");
  if (sweep_mc_samples < 0) fail("sweep_mc_samples must be >= 0");
  try {
    (void)curves::build_submanifold(manifold, submanifold);
  } catch (const Error& e) {
    fail(std::string("invalid submanifold: ") + e.what());
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  const std::string where = "config";
  reject_unknown(j,
                 {"schema_version", "manifold", "window", "h", "submanifold", "p", "q", "samples",
                  "lq_samples", "seed", "workers", "lambda_grid", "r_grid", "lipschitz_pairs",
                  "corrupt_ns_factor", "kuznecov_h_min", "kuznecov_points", "sweep_mc_samples", "sweep_h"},
                 where);
  const int version = get<int>(j, "schema_version", where);
  if (version != kSchemaVersion) {
    fail("unsupported schema_version " + std::to_string(version) + " (expected " +
         std::to_string(kSchemaVersion) + ")");
  }
  ExperimentConfig c;
  if (j.contains("manifold")) c.manifold = parse_manifold_name(get<std::string>(j, "manifold", where));
  if (j.contains("window")) {
    const Json& w = j.at("window");
    reject_unknown(w, {"a", "D"}, "window");
    read_optional(w, "a", c.window.a, "window");
    read_optional(w, "D", c.window.width, "window");
  }
  read_optional(j, "h", c.h, where);
  if (j.contains("submanifold")) {
    c.submanifold = submanifold_from_json(j.at("submanifold"), c.manifold);
  } else if (!c.manifold.is_torus()) {
    c.submanifold.kind = curves::SubmanifoldKind::kSphereLatitudeCircle;
  }
  read_optional(j, "p", c.p, where);
  read_optional(j, "q", c.q, where);
  read_optional(j, "samples", c.samples, where);
  read_optional(j, "lq_samples", c.lq_samples, where);
  read_optional(j, "seed", c.seed, where);
  read_optional(j, "workers", c.workers, where);
  read_optional(j, "lambda_grid", c.lambda_grid, where);
  read_optional(j, "r_grid", c.r_grid, where);
  read_optional(j, "lipschitz_pairs", c.lipschitz_pairs, where);
  read_optional(j, "corrupt_ns_factor", c.corrupt_ns_factor, where);
  read_optional(j, "kuznecov_h_min", c.kuznecov_h_min, where);
  read_optional(j, "kuznecov_points", c.kuznecov_points, where);
  read_optional(j, "sweep_mc_samples", c.sweep_mc_samples, where);
  read_optional(j, "sweep_h", c.sweep_h, where);
  c.validate();
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["manifold"] = c.manifold.name();
  j["window"] = {{"a", c.window.a}, {"D", c.window.width}};
  j["h"] = c.h;
  j["submanifold"] = submanifold_to_json(c.submanifold, c.manifold);
  j["p"] = c.p;
  j["q"] = c.q;
  j["samples"] = c.samples;
  j["lq_samples"] = c.lq_samples;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["lambda_grid"] = c.lambda_grid;
  j["r_grid"] = c.r_grid;
  j["lipschitz_pairs"] = c.lipschitz_pairs;
  j["corrupt_ns_factor"] = c.corrupt_ns_factor;
  j["kuznecov_h_min"] = c.kuznecov_h_min;
  j["kuznecov_points"] = c.kuznecov_points;
  j["sweep_mc_samples"] = c.sweep_mc_samples;
  j["sweep_h"] = c.sweep_h;
  return j.dump(2);
}

curves::SubmanifoldSpec parse_submanifold(const std::string& json_text,
                                          const spectral::Manifold& manifold) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(std::string("submanifold is not valid JSON: ") + e.what());
  }
  return submanifold_from_json(j, manifold);
}

}  // namespace wavestat::experiments
