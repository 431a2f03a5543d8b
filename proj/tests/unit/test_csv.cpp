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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <string>

#include "csv_io.hpp"

namespace wavestat::csv {
namespace {

TEST(Csv, EmptyDocumentIsHeaderOnly) {
  Document doc;
  doc.header = {"h", "p", "exact"};
  EXPECT_EQ(serialize(doc), "h,p,exact\n");
}

TEST(Csv, OneRowIsTwoLines) {
  Document doc;
  doc.header = {"a", "b"};
  doc.rows.push_back({std::int64_t{3}, 0.5});
  EXPECT_EQ(serialize(doc), "a,b\n3,5.0000000000000000e-01\n");
}

TEST(Csv, RealsUseSeventeenSignificantDigits) {
  EXPECT_EQ(format_real(0.1), "1.0000000000000001e-01");
  EXPECT_EQ(format_real(-12.0), "-1.2000000000000000e+01");
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, -2.718281828459045}) {
    EXPECT_EQ(std::strtod(format_real(v).c_str(), nullptr), v);
  }
}

TEST(Csv, ParseThenSerializeIsByteIdentical) {
  Document doc;
  doc.header = {"row", "h", "n", "note"};
  doc.rows.push_back({std::string("point"), 0.05, std::int64_t{864}, std::string("say \"hi\", ok")});
  doc.rows.push_back({std::string("fit"), std::monostate{}, std::int64_t{-1}, std::string("")});
  doc.rows.push_back({std::string("x"), 1.0 / 3.0, std::int64_t{0}, std::monostate{}});
  const std::string text = serialize(doc);
  const Document parsed = parse(text);
  EXPECT_EQ(parsed.header, doc.header);
  EXPECT_EQ(parsed.rows, doc.rows);
  EXPECT_EQ(serialize(parsed), text);
}

TEST(Csv, MalformedInputRejected) {
  EXPECT_THROW((void)parse("a\n\"open\n"), std::runtime_error);
  EXPECT_THROW((void)parse("a\nabc\n"), std::runtime_error);
}

TEST(Csv, IoErrorsNameThePath) {
  const std::string path = "/nonexistent-dir/for/sure/file.csv";
  try {
    write_file(path, "x");
    FAIL() << "expected failure";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
  }
  try {
    (void)read_file(path);
    FAIL() << "expected failure";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
  }
}

}  // namespace
}  // namespace wavestat::csv
