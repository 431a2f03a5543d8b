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

namespace wavestat::csv {

/// Empty, integer, real or quoted text.
using Field = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Document {
  std::vector<std::string> header;
  std::vector<std::vector<Field>> rows;
};

/// Scientific notation with 17 significant digits; round-trips any double.
std::string format_real(double value);

std::string format_field(const Field& field);

/// Header line plus one line per row, '\n' terminated.
std::string serialize(const Document& doc);

/// Inverse of serialize: quoted fields are text, empty fields are empty,
/// integers stay integers and everything else is read as a real.
Document parse(const std::string& text);

/// Writes `content` to `path`; throws std::runtime_error naming the path.
void write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace wavestat::csv
