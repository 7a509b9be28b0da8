// Copyright 2026 The qunc Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qunc/output.hpp"

#include <cmath>

#include <fmt/format.h>
#include "json.hpp"

namespace qunc::cli {
namespace {

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

struct CsvCell {
  std::string operator()(std::int64_t v) const { return fmt::format("{}", v); }
  std::string operator()(double v) const { return fmt::format("{:.17g}", v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
  std::string operator()(const std::string& v) const { return quote_csv(v); }
};

nlohmann::ordered_json to_json(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      cell);
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << quote_csv(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << std::visit(CsvCell{}, row[i]);
    }
    out << '\n';
  }
  for (const auto& [key, value] : table.summary) {
    out << "# " << quote_csv(key) << ',' << std::visit(CsvCell{}, value) << '\n';
  }
}

void write_json(std::ostream& out, const Meta& meta, const Table& table) {
  nlohmann::ordered_json doc;
  doc["meta"]["seed"] = meta.seed;
  doc["meta"]["version"] = meta.version;
  doc["meta"]["command"] = meta.command;
  auto& data = doc["data"];
  data["columns"] = table.columns;
  data["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) r.push_back(to_json(cell));
    data["rows"].push_back(std::move(r));
  }
  data["summary"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.summary) data["summary"][key] = to_json(value);
  out << doc.dump(2) << '\n';
}

}  // namespace qunc::cli
