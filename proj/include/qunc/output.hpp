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

#ifndef QUNC_OUTPUT_HPP
#define QUNC_OUTPUT_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qunc::cli {

using Cell = std::variant<std::int64_t, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Scalar results that do not fit the row layout (normalizations, areas).
  std::vector<std::pair<std::string, Cell>> summary;
};

struct Meta {
  std::uint64_t seed;
  std::string version;
  std::string command;
};

/// Header row, one line per row, then one "# key,value" line per summary
/// entry. Doubles use %.17g so they parse back to the same value.
void write_csv(std::ostream& out, const Table& table);

/// {"meta": {...}, "data": {"columns", "rows", "summary"}}. Non-finite
/// doubles become null.
void write_json(std::ostream& out, const Meta& meta, const Table& table);

}  // namespace qunc::cli

#endif  // QUNC_OUTPUT_HPP
