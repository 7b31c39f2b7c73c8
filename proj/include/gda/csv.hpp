// Copyright 2026 The gda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dataset CSV: a header `x1,...,xd,label`, then one row per sample with
// features printed to 17 significant digits and a 0-based integer label.

#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "gda/error.hpp"
#include "gda/estimation.hpp"

namespace gda {

inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::vector<std::string_view> split_fields(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no) {
  field = trim(field);
  T value{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "'");
  }
  return value;
}

inline void write_csv(std::ostream& out, const LabeledDataset& ds) {
  for (std::size_t j = 0; j < ds.dim(); ++j) out << 'x' << (j + 1) << ',';
  out << "label\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.rows()[i]) out << format_double(v) << ',';
    out << ds.labels()[i] << '\n';
  }
}

inline LabeledDataset read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParseError, "empty CSV input");
  const auto header = split_fields(trim(line));
  if (header.size() < 2 || trim(header.back()) != "label") {
    throw Error(ErrorCode::kParseError, "line 1: header must be x1,...,xd,label");
  }
  const std::size_t d = header.size() - 1;
  LabeledDataset ds(d);
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto fields = split_fields(view);
    if (fields.size() != d + 1) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(d + 1) + " fields, got " +
                                              std::to_string(fields.size()));
    }
    Vector x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = parse_number<double>(fields[j], line_no);
    const int label = parse_number<int>(fields[d], line_no);
    if (label < 0) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": negative label");
    }
    ds.add(std::move(x), label);
  }
  if (ds.empty()) throw Error(ErrorCode::kEmptyDataset, "CSV has no data rows");
  return ds;
}

inline void save_csv(const std::string& path, const LabeledDataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open '" + path + "' for writing");
  write_csv(out, ds);
  if (!out) throw Error(ErrorCode::kIoError, "failed writing '" + path + "'");
}

inline LabeledDataset load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace gda
