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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace wavestat::experiments {

/// A CSV cell: empty, integer, real or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

/// One pass/fail assertion made by an experiment.
struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct Report {
  std::string experiment;
  std::vector<Table> tables;
  std::vector<Check> checks;

  bool passed() const noexcept {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }

  void check(std::string name, bool ok, double value, double threshold) {
    checks.push_back({std::move(name), ok, value, threshold});
  }

  const Table* table(const std::string& name) const noexcept {
    for (const auto& t : tables) {
      if (t.name == name) return &t;
    }
    return nullptr;
  }
};

}  // namespace wavestat::experiments
