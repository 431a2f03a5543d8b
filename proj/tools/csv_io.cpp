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

#include "csv_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wavestat::csv {
namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

Field classify(const std::string& token, bool quoted) {
  if (quoted) return token;
  if (token.empty()) return std::monostate{};
  std::size_t i = token[0] == '-' || token[0] == '+' ? 1 : 0;
  bool integral = i < token.size();
  for (; i < token.size(); ++i) {
    if (token[i] < '0' || token[i] > '9') {
      integral = false;
      break;
    }
  }
  if (integral) return static_cast<std::int64_t>(std::strtoll(token.c_str(), nullptr, 10));
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) {
    throw std::runtime_error("malformed CSV field '" + token + "'");
  }
  return value;
}

std::vector<std::pair<std::string, bool>> split_line(const std::string& text, std::size_t& pos) {
  std::vector<std::pair<std::string, bool>> fields;
  std::string current;
  bool quoted = false;
  bool in_quotes = false;
  while (pos < text.size()) {
    const char ch = text[pos++];
    if (in_quotes) {
      if (ch == '"') {
        if (pos < text.size() && text[pos] == '"') {
          current += '"';
          ++pos;
        } else {
          in_quotes = false;
        }
      } else {
        current += ch;
      }
    } else if (ch == '"') {
      in_quotes = true;
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back(std::move(current), quoted);
      current.clear();
      quoted = false;
    } else if (ch == '\n') {
      break;
    } else {
      current += ch;
    }
  }
  if (in_quotes) throw std::runtime_error("unterminated quoted CSV field");
  fields.emplace_back(std::move(current), quoted);
  return fields;
}

}  // namespace

std::string format_real(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.16e", value);
  return buffer;
}

std::string format_field(const Field& field) {
  if (const auto* i = std::get_if<std::int64_t>(&field)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&field)) return format_real(*d);
  if (const auto* s = std::get_if<std::string>(&field)) return quote(*s);
  return {};
}

std::string serialize(const Document& doc) {
  std::string out;
  for (std::size_t c = 0; c < doc.header.size(); ++c) {
    if (c > 0) out += ',';
    out += doc.header[c];
  }
  out += '\n';
  for (const auto& row : doc.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += ',';
      out += format_field(row[c]);
    }
    out += '\n';
  }
  return out;
}

Document parse(const std::string& text) {
  Document doc;
  std::size_t pos = 0;
  if (text.empty()) return doc;
  for (auto& [name, quoted] : split_line(text, pos)) doc.header.push_back(name);
  while (pos < text.size()) {
    std::vector<Field> row;
    for (const auto& [token, quoted] : split_line(text, pos)) row.push_back(classify(token, quoted));
    if (row.size() != doc.header.size()) {
      throw std::runtime_error("CSV row has " + std::to_string(row.size()) + " fields, header has " +
                               std::to_string(doc.header.size()));
    }
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing: " + std::strerror(errno));
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "': " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace wavestat::csv
