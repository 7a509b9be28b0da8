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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "qunc/cli.hpp"
#include "qunc/observables.hpp"
#include "qunc/regions.hpp"

using doctest::Approx;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = qunc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> footer;

  double summary(const std::string& key) const {
    for (const auto& [k, v] : footer) {
      if (k == key) return std::stod(v);
    }
    FAIL("missing summary key " << key);
    return 0;
  }
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  const auto lines = split(text, '\n');
  REQUIRE(!lines.empty());
  csv.header = split(lines[0], ',');
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].rfind("# ", 0) == 0) {
      const auto kv = split(lines[i].substr(2), ',');
      csv.footer.emplace_back(kv.at(0), kv.at(1));
    } else {
      csv.rows.push_back(split(lines[i], ','));
    }
  }
  return csv;
}

const std::vector<std::string> kSinglet = {"witness", "--site", "0,1,0,0;0,0,1,0", "--site",
                                           "0,1,0,0;0,0,1,0"};

}  // namespace

TEST_CASE("bounds subcommand") {
  auto r = run({"bounds", "--obs", "0,1,0,0", "--obs", "0,0,0,1"});
  REQUIRE(r.code == 0);
  auto csv = parse_csv(r.out);
  CHECK(csv.header.at(0) == "bound");
  CHECK(csv.rows.at(0).at(0) == "variance_sum");
  CHECK(std::stod(csv.rows[0][1]) == Approx(1.0));

  r = run({"bounds", "--obs", "0,1,0,0", "--obs", "0,0.7071,0.7071,0"});
  REQUIRE(r.code == 0);
  csv = parse_csv(r.out);
  CHECK(std::stod(csv.rows[0][1]) == Approx(1 - std::sqrt(2.0) / 2).epsilon(1e-4));
  // Brute-force cross-check column.
  CHECK(std::abs(std::stod(csv.rows[0][4])) < 1e-6);

  r = run({"bounds", "--obs", "-0.5,1,0,0", "--obs", "0,0,1,0", "--obs", "0,0,0,1"});
  CHECK(r.code == 0);
  CHECK(std::stod(parse_csv(r.out).rows.at(0).at(1)) == Approx(2.0));
}

TEST_CASE("exit codes") {
  auto r = run({"bounds", "--obs", "1,2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("a0,a1,a2,a3") != std::string::npos);
  CHECK(run({"bounds", "--obs", "0,1,0,x", "--obs", "0,0,0,1"}).code == 2);
  CHECK(run({"bounds", "--obs", "0,1,0,nan", "--obs", "0,0,0,1"}).code == 2);
  CHECK(run({"bounds", "--obs", "0,1,0,0"}).code == 2);
  CHECK(run({"bounds", "--obs", "0,0,0,0", "--obs", "0,0,0,1"}).code == 3);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "--samples", "0"}).code == 2);
  CHECK(run({"bounds", "--obs", "0,1,0,0", "--obs", "0,0,0,1", "--format", "xml"}).code == 2);
  CHECK(run({"region", "--obs", "0,1,0,0", "--obs", "0,2,0,0", "--grid", "10"}).code == 3);
  CHECK(run({"region", "--obs", "0,1,0,0", "--obs", "0,0,1,0"}).code == 2);
  CHECK(run({"pdf", "--obs", "0,1,0,0", "--which", "unc2"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("region grid and boundary") {
  auto r = run({"region", "--obs", "0,1,0,0", "--obs", "0,0,1,0", "--grid", "100"});
  REQUIRE(r.code == 0);
  auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 10000);
  int inside = 0;
  for (const auto& row : csv.rows) inside += row.at(2) == "true";
  CHECK(inside / 1e4 == Approx(1 - std::numbers::pi / 4).epsilon(0.01));
  CHECK(csv.summary("area_formula") == Approx(1 - std::numbers::pi / 4));
  CHECK(csv.summary("mc_area") == Approx(1 - std::numbers::pi / 4).epsilon(0.01));

  r = run({"region", "--obs", "0.2,1,0,0", "--obs", "0,0.5,1.1,0.3", "--boundary", "256"});
  REQUIRE(r.code == 0);
  csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 256);
  const Eigen::Vector3d a(1, 0, 0);
  const Eigen::Vector3d b(0.5, 1.1, 0.3);
  for (const auto& row : csv.rows) {
    // Equality in (|b|^2 x^2 + |a|^2 y^2 + 2|a.b| X Y = |a|^2|b|^2 + (a.b)^2).
    const double x = std::stod(row[0]);
    const double y = std::stod(row[1]);
    const double big_x = std::sqrt(std::max(0.0, a.squaredNorm() - x * x));
    const double big_y = std::sqrt(std::max(0.0, b.squaredNorm() - y * y));
    const double lhs = b.squaredNorm() * x * x + a.squaredNorm() * y * y + 2 * std::abs(a.dot(b)) * big_x * big_y;
    const double rhs = a.squaredNorm() * b.squaredNorm() + std::pow(a.dot(b), 2);
    CHECK(std::abs(lhs - rhs) / rhs < 1e-9);
  }
  CHECK(run({"region", "--obs", "0,1,0,0", "--obs", "0,0,1,0", "--obs", "0,0,0,1", "--boundary", "20"}).code == 2);
}

TEST_CASE("Pauli triple grid") {
  auto r = run({"region", "--obs", "0,1,0,0", "--obs", "0,0,1,0", "--obs", "0,0,0,1", "--grid", "20",
                "--samples", "100000"});
  REQUIRE(r.code == 0);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 8000);
  const qunc::RegionSpec spec({qunc::QubitObservable::pauli(1), qunc::QubitObservable::pauli(2),
                               qunc::QubitObservable::pauli(3)});
  for (const auto& row : csv.rows) {
    Eigen::VectorXd p(3);
    for (int k = 0; k < 3; ++k) p(k) = std::stod(row[k]);
    CHECK((row[3] == "true") == qunc::contains_triple(spec, {p}));
    CHECK((row[3] == "true") == (p.squaredNorm() >= 2));
  }
}

TEST_CASE("pdf tables") {
  auto r = run({"pdf", "--obs", "0,0,0,1", "--which", "unc", "--points", "5"});
  REQUIRE(r.code == 0);
  auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 5);
  CHECK(std::stod(csv.rows[2][0]) == Approx(0.5));
  CHECK(std::stod(csv.rows[2][1]) == Approx(1.5 * 0.125 / std::sqrt(0.75)).epsilon(1e-12));
  CHECK(std::abs(csv.summary("normalization") - 1) < 1e-6);

  for (const char* which : {"mean", "unc"}) {
    r = run({"pdf", "--obs", "0.3,0.2,0.5,-1", "--which", which});
    CHECK(std::abs(parse_csv(r.out).summary("normalization") - 1) < 1e-6);
  }
  r = run({"pdf", "--obs", "0,1,0,0", "--obs", "0.1,0.5,1,0", "--which", "unc2", "--points", "8"});
  CHECK(std::abs(parse_csv(r.out).summary("normalization") - 1) < 1e-6);
  r = run({"pdf", "--obs", "0,1,0,0", "--obs", "0.1,0.5,1,0", "--obs", "0,0,1,1", "--which",
           "unc3", "--points", "4"});
  REQUIRE(r.code == 0);
  csv = parse_csv(r.out);
  CHECK(csv.rows.size() == 64);
  CHECK(std::abs(csv.summary("normalization") - 1) < 1e-6);

  CHECK(run({"pdf", "--obs", "0,1,0,0", "--obs", "0,2,0,0", "--which", "unc2"}).code == 3);
  r = run({"pdf", "--obs", "0,1,0,0", "--obs", "0,2,0,0", "--which", "mean2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# kind,constrained") != std::string::npos);
}

TEST_CASE("witness subcommand") {
  auto r = run(kSinglet);
  REQUIRE(r.code == 0);
  auto csv = parse_csv(r.out);
  CHECK(std::abs(std::stod(csv.rows.at(0).at(0))) < 1e-12);
  CHECK(std::stod(csv.rows[0][1]) == Approx(2.0));
  CHECK(csv.rows[0][2] == "true");
  CHECK(std::stod(csv.rows[0][3]) == Approx(2.0).epsilon(1e-10));

  auto product = kSinglet;
  product.insert(product.end(), {"--state", "product", "--seed", "9"});
  r = run(product);
  REQUIRE(r.code == 0);
  CHECK(parse_csv(r.out).rows.at(0).at(2) == "false");

  const std::string path = "qunc_test_state.json";
  {
    std::ofstream f(path);
    f << "[[1,0],[0,0],[0,0],[0,0],[0,0],[-1,0],[0,0],[0,0],"
         "[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[0,0],[0,0]]";
  }
  auto from_file = kSinglet;
  from_file.insert(from_file.end(), {"--state", "file", "--state-file", path});
  CHECK(run(from_file).code == 4);
  {
    std::ofstream f(path);
    f << "[[0,0],[0,0],[0,0],[0,0],[0,0],[0.5,0],[-0.5,0],[0,0],"
         "[0,0],[-0.5,0],[0.5,0],[0,0],[0,0],[0,0],[0,0],[0,0]]";
  }
  r = run(from_file);
  CHECK(r.code == 0);
  CHECK(parse_csv(r.out).rows.at(0).at(2) == "true");
  {
    std::ofstream f(path);
    f << "{not json";
  }
  CHECK(run(from_file).code == 4);
  std::remove(path.c_str());

  auto ghz_on_two = kSinglet;
  ghz_on_two.insert(ghz_on_two.end(), {"--state", "ghz"});
  CHECK(run(ghz_on_two).code == 2);
  CHECK(run({"witness", "--site", "0,1,0,0;0,0,1,0", "--site", "0,1,0,0"}).code == 2);
}

TEST_CASE("CSV and JSON carry the same values") {
  const std::vector<std::vector<std::string>> commands = {
      {"bounds", "--obs", "0.1,1,0.2,0", "--obs", "0,0.3,1,0.4"},
      {"pdf", "--obs", "0,1,0,0", "--obs", "0.1,0.5,1,0", "--which", "mean2", "--points", "6"},
      {"region", "--obs", "0,1,0,0", "--obs", "0,1,1,0", "--boundary", "40"},
      kSinglet,
  };
  for (auto args : commands) {
    const auto csv = parse_csv(run(args).out);
    args.insert(args.end(), {"--format", "json"});
    const auto doc = nlohmann::json::parse(run(args).out);
    CHECK(doc["meta"]["seed"] == 42);
    CHECK(doc["meta"]["command"] == args[0]);
    REQUIRE(doc["data"]["rows"].size() == csv.rows.size());
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
      for (std::size_t j = 0; j < csv.rows[i].size(); ++j) {
        const auto& cell = doc["data"]["rows"][i][j];
        if (cell.is_number_float()) {
          CHECK(cell.get<double>() == std::stod(csv.rows[i][j]));
        } else if (cell.is_boolean()) {
          CHECK((cell.get<bool>() ? "true" : "false") == csv.rows[i][j]);
        } else if (cell.is_string()) {
          CHECK(cell.get<std::string>() == csv.rows[i][j]);
        } else {
          CHECK(cell.dump() == csv.rows[i][j]);
        }
      }
    }
  }
}

TEST_CASE("output file and determinism") {
  const std::string path = "qunc_test_out.csv";
  const std::vector<std::string> args = {"region", "--obs", "0,1,0,0", "--obs", "0,1,1,0",
                                         "--grid", "30", "--seed", "5"};
  auto with_out = args;
  with_out.insert(with_out.end(), {"--out", path});
  REQUIRE(run(with_out).code == 0);
  std::ifstream f(path, std::ios::binary);
  const std::string written((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(written == run(args).out);
  CHECK(written.find('\r') == std::string::npos);
  std::remove(path.c_str());
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("verify subcommand") {
  auto r = run({"verify", "--samples", "100"});
  CHECK((r.code == 0 || r.code == 1));
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(r.out.find("histogram_l1_unc3") != std::string::npos);

  r = run({"verify", "--inject-pdf-bug"});
  CHECK(r.code == 1);
  CHECK(r.out.find("histogram_l1_unc,false") != std::string::npos);
}
