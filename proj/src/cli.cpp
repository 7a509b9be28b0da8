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

#include "qunc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "qunc/bounds.hpp"
#include "qunc/densities.hpp"
#include "qunc/errors.hpp"
#include "qunc/observables.hpp"
#include "qunc/output.hpp"
#include "qunc/regions.hpp"
#include "qunc/verify.hpp"
#include "qunc/witness.hpp"

#ifndef QUNC_VERSION
#define QUNC_VERSION "0.0.0"
#endif

namespace qunc::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::vector<std::string> obs;
  std::uint64_t seed = 42;
  std::int64_t samples = 1000000;
  std::string format = "csv";
  std::string out_path;

  int grid = 0;
  int boundary = 0;
  std::string which;
  int points = 25;
  bool inject_pdf_bug = false;
  std::vector<std::string> sites;
  std::string state = "singlet";
  std::string state_file;
  bool composite_min = false;
  int restarts = 16;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = s.find(sep, start);
    parts.push_back(s.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos) return parts;
    start = end + 1;
  }
}

QubitObservable parse_observable(const std::string& text) {
  const auto fields = split(text, ',');
  if (fields.size() != 4) {
    throw UsageError(fmt::format("observable '{}': expected a0,a1,a2,a3", text));
  }
  double v[4];
  for (int i = 0; i < 4; ++i) {
    const std::string& f = fields[i];
    const char* end = f.data() + f.size();
    auto [ptr, ec] = std::from_chars(f.data(), end, v[i]);
    if (f.empty() || ec != std::errc() || ptr != end || !std::isfinite(v[i])) {
      throw UsageError(fmt::format("observable '{}': '{}' is not a finite number", text, f));
    }
  }
  return QubitObservable(v[0], v[1], v[2], v[3]);
}

Family parse_family(const std::vector<std::string>& texts) {
  Family family;
  for (const auto& t : texts) family.push_back(parse_observable(t));
  return family;
}

std::string column(const char* prefix, int index) { return fmt::format("{}{}", prefix, index + 1); }

// Cell centers of an n-per-axis grid over [lo, hi].
double center(double lo, double hi, int i, int n) { return lo + (hi - lo) * (i + 0.5) / n; }

// Visits every multi-index of an n^dims grid in row-major order.
template <typename Fn>
void for_each_cell(int dims, int n, Fn fn) {
  std::vector<int> idx(static_cast<std::size_t>(dims), 0);
  while (true) {
    fn(idx);
    int k = dims - 1;
    while (k >= 0 && ++idx[k] == n) idx[k--] = 0;
    if (k < 0) return;
  }
}

Table cmd_bounds(const Config& cfg) {
  const Family family = parse_family(cfg.obs);
  if (family.size() < 2) throw UsageError("bounds needs at least two --obs");
  const GramMatrix t = gram(family);
  const int n = static_cast<int>(family.size());
  const int rank = decompose(family).rank;

  Table table;
  table.columns = {"bound", "value", "method", "brute_force", "delta"};
  for (int k = 0; k < n; ++k) table.columns.push_back(column("x", k));
  for (int k = 0; k < 3; ++k) table.columns.push_back(column("r", k));

  const auto add = [&](const BoundReport& r, Objective objective) {
    const BoundReport bf = brute_force_min(family, objective);
    std::vector<Cell> row = {to_string(r.kind), r.value, to_string(r.method), bf.value,
                             bf.value - r.value};
    for (int k = 0; k < n; ++k) row.emplace_back(r.argmin_point.coords(k));
    for (int k = 0; k < 3; ++k) row.emplace_back(r.argmin_state(k));
    table.rows.push_back(std::move(row));
  };

  if (n == 2) {
    add(variance_sum_bound_pair(family[0], family[1]), Objective::sum_of_squares);
    add(deviation_sum_bound_pair(family[0], family[1]), Objective::sum);
  } else if (n == 3 && rank == 3) {
    add(variance_sum_bound_triple(family[0], family[1], family[2]), Objective::sum_of_squares);
  } else {
    add(variance_sum_bound_n(family), Objective::sum_of_squares);
  }
  table.summary = {{"observables", std::int64_t{n}},
                   {"rank", std::int64_t{rank}},
                   {"gram_trace", t.trace()}};
  return table;
}

Table cmd_region(const Config& cfg) {
  const Family family = parse_family(cfg.obs);
  const int n = static_cast<int>(family.size());
  if (n != 2 && n != 3) throw UsageError("region needs two or three --obs");
  if ((cfg.grid > 0) == (cfg.boundary > 0)) {
    throw UsageError("region needs exactly one of --grid N or --boundary N");
  }
  const RegionSpec spec(family);
  if (spec.rank() < n) {
    throw LinearlyDependentFamily(
        fmt::format("region needs {} linearly independent observables, rank is {}", n, spec.rank()));
  }
  const Eigen::VectorXd norms = spec.norms();
  Table table;

  if (cfg.boundary > 0) {
    if (n != 2) throw UsageError("--boundary is only available for two observables");
    table.columns = {"x1", "x2", "residual"};
    double worst = 0.0;
    for (const auto& p : boundary_pair(spec, cfg.boundary)) {
      const double res = pair_residual(spec, p);
      worst = std::max(worst, std::abs(res));
      table.rows.push_back({p.coords(0), p.coords(1), res});
    }
    table.summary = {{"max_abs_residual", worst}};
    return table;
  }

  const int g = cfg.grid;
  for (int k = 0; k < n; ++k) table.columns.push_back(column("x", k));
  table.columns.push_back("inside");
  std::int64_t inside = 0;
  RegionPoint p{Eigen::VectorXd(n)};
  for_each_cell(n, g, [&](const std::vector<int>& idx) {
    std::vector<Cell> row;
    for (int k = 0; k < n; ++k) {
      p.coords(k) = center(0.0, norms(k), idx[k], g);
      row.emplace_back(p.coords(k));
    }
    const bool in = n == 2 ? contains_pair(spec, p) : contains_triple(spec, p);
    inside += in;
    row.emplace_back(in);
    table.rows.push_back(std::move(row));
  });

  const double box = norms.prod();
  const double grid_measure = box * static_cast<double>(inside) / std::pow(g, n);
  const VolumeEstimate mc = volume_mc(spec, cfg.samples, cfg.seed);
  if (n == 2) {
    const double theta = angle_between(family[0].vec(), family[1].vec());
    const double folded = std::min(theta, std::numbers::pi - theta);
    table.summary = {{"theta", folded},
                     {"area_formula", box * area_pair(folded)},
                     {"grid_area", grid_measure},
                     {"mc_area", mc.estimate},
                     {"mc_std_error", mc.std_error}};
  } else {
    table.summary = {{"grid_volume", grid_measure},
                     {"mc_volume", mc.estimate},
                     {"mc_std_error", mc.std_error}};
  }
  return table;
}

DensityDescriptor make_density(const std::string& which, const Family& f) {
  struct Choice {
    const char* name;
    Quantity quantity;
    std::size_t count;
  };
  static const Choice choices[] = {
      {"mean", Quantity::mean, 1},  {"unc", Quantity::uncertainty, 1},
      {"mean2", Quantity::mean, 2}, {"unc2", Quantity::uncertainty, 2},
      {"mean3", Quantity::mean, 3}, {"unc3", Quantity::uncertainty, 3},
  };
  for (const auto& c : choices) {
    if (which != c.name) continue;
    if (f.size() != c.count) {
      throw UsageError(fmt::format("--which {} needs {} --obs, got {}", which, c.count, f.size()));
    }
    switch (c.count) {
      case 1:
        return c.quantity == Quantity::mean ? pdf_mean(f[0]) : pdf_uncertainty(f[0]);
      case 2:
        return c.quantity == Quantity::mean ? pdf_mean_pair(f[0], f[1])
                                            : pdf_uncertainty_pair(f[0], f[1]);
      default:
        return c.quantity == Quantity::mean ? pdf_mean_triple(f[0], f[1], f[2])
                                            : pdf_uncertainty_triple(f[0], f[1], f[2]);
    }
  }
  throw UsageError(fmt::format("unknown --which '{}'", which));
}

Table cmd_pdf(const Config& cfg) {
  const DensityDescriptor density = make_density(cfg.which, parse_family(cfg.obs));
  const HistogramSpec box = histogram_box(density, cfg.points);
  const int dims = density.rank();

  Table table;
  for (int j : density.basis()) table.columns.push_back(column("x", j));
  table.columns.push_back("density");
  Eigen::VectorXd x(dims);
  for_each_cell(dims, cfg.points, [&](const std::vector<int>& idx) {
    std::vector<Cell> row;
    for (int k = 0; k < dims; ++k) {
      x(k) = center(box.lo(k), box.hi(k), idx[k], cfg.points);
      row.emplace_back(x(k));
    }
    row.emplace_back(density(x));
    table.rows.push_back(std::move(row));
  });
  const std::size_t constraints =
      density.affine_constraints().size() + density.root_constraints().size();
  table.summary = {
      {"kind", std::string(density.kind() == DensityKind::continuous ? "continuous" : "constrained")},
      {"rank", std::int64_t{dims}},
      {"constraints", static_cast<std::int64_t>(constraints)},
      {"normalization", normalization(density)}};
  return table;
}

Table cmd_verify(const Config& cfg, std::ostream& err, bool& passed) {
  VerifyOptions options;
  options.seed = cfg.seed;
  options.samples = cfg.samples;
  options.inject_pdf_bug = cfg.inject_pdf_bug;
  const VerifyReport report = run_verification(options);

  Table table;
  table.columns = {"check", "passed", "statistic", "threshold"};
  for (const auto& c : report.checks) {
    table.rows.push_back({c.name, c.passed, c.statistic, c.threshold});
  }
  for (std::size_t i = 0; i < report.warnings.size(); ++i) {
    err << "warning: " << report.warnings[i] << '\n';
    table.summary.emplace_back(fmt::format("warning_{}", i + 1), report.warnings[i]);
  }
  passed = report.all_passed();
  table.summary.emplace_back("samples", cfg.samples);
  table.summary.emplace_back("all_passed", passed);
  return table;
}

MultipartiteState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StateFormatError(fmt::format("cannot open state file '{}'", path));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw StateFormatError(fmt::format("state file '{}': {}", path, e.what()));
  }
  if (!doc.is_array()) throw StateFormatError("state file must hold a JSON array of [re, im] pairs");
  const auto count = static_cast<Eigen::Index>(doc.size());
  const auto dim = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(count))));
  if (dim * dim != count || dim == 0) {
    throw StateFormatError(fmt::format("state file holds {} entries, not a square matrix", count));
  }
  Eigen::MatrixXcd rho(dim, dim);
  for (Eigen::Index i = 0; i < count; ++i) {
    const auto& e = doc[static_cast<std::size_t>(i)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw StateFormatError(fmt::format("state file entry {} is not a [re, im] pair", i));
    }
    rho(i / dim, i % dim) = {e[0].get<double>(), e[1].get<double>()};
  }
  return MultipartiteState::dense(std::move(rho));
}

Table cmd_witness(const Config& cfg) {
  const int sites = static_cast<int>(cfg.sites.size());
  if (sites != 2 && sites != 3) throw UsageError("witness needs two or three --site flags");
  std::vector<Family> per_site;
  for (const auto& s : cfg.sites) per_site.push_back(parse_family(split(s, ';')));
  const std::size_t measurements = per_site.front().size();
  if (measurements != 2 && measurements != 3) {
    throw UsageError("each --site needs two or three observables separated by ';'");
  }
  for (const auto& f : per_site) {
    if (f.size() != measurements) throw UsageError("every --site needs the same number of observables");
  }
  std::vector<CompositeObservable> ms;
  for (std::size_t i = 0; i < measurements; ++i) {
    std::vector<QubitObservable> parts;
    for (const auto& f : per_site) parts.push_back(f[i]);
    ms.emplace_back(std::move(parts));
  }

  std::optional<MultipartiteState> state;
  if (cfg.state == "singlet") {
    state = singlet_state();
  } else if (cfg.state == "ghz") {
    state = ghz_state();
  } else if (cfg.state == "product") {
    Rng rng(cfg.seed);
    state = random_separable(sites, 1, rng);
  } else {
    if (cfg.state_file.empty()) throw UsageError("--state file needs --state-file PATH");
    state = read_state_file(cfg.state_file);
  }
  if (state->sites() != sites) {
    throw UsageError(fmt::format("state has {} sites but {} --site flags were given",
                                 state->sites(), sites));
  }

  const WitnessVerdict v = evaluate_witness(ms, *state);
  Table table;
  table.columns = {"lhs", "rhs", "violated", "margin"};
  table.rows.push_back({v.lhs, v.rhs, v.violated, v.margin});
  table.summary = {{"sites", std::int64_t{sites}},
                   {"measurements", static_cast<std::int64_t>(measurements)},
                   {"state", cfg.state}};
  if (cfg.composite_min) {
    const CompositeMinimum m = composite_min_bound(ms, cfg.seed, cfg.restarts);
    table.summary.emplace_back("composite_min", m.value);
    table.summary.emplace_back("composite_min_converged", m.converged);
  }
  return table;
}

void add_common(CLI::App* sub, Config& cfg, bool with_obs) {
  sub->add_option("--seed", cfg.seed, "Seed for every random stream")->capture_default_str();
  sub->add_option("--samples", cfg.samples, "Monte Carlo sample count")
      ->check(CLI::Range(std::int64_t{1}, std::numeric_limits<std::int64_t>::max()))
      ->capture_default_str();
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--out", cfg.out_path, "Write output to PATH instead of stdout");
  if (with_obs) {
    sub->add_option("--obs", cfg.obs, "Observable a0,a1,a2,a3 (repeatable)")
        ->allow_extra_args(false);
  }
}

int report_error(std::ostream& err, int code, const std::string& what) {
  err << "error: " << what << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Uncertainty regions, random-state densities, tight uncertainty bounds and "
               "variance witnesses for qubit observables.",
               "qunc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QUNC_VERSION);

  auto* bounds = app.add_subcommand("bounds", "Tight variance-sum and deviation-sum bounds");
  add_common(bounds, cfg, true);

  auto* region = app.add_subcommand("region", "Uncertainty region grid or boundary");
  add_common(region, cfg, true);
  region->add_option("--grid", cfg.grid, "Membership grid with N cells per axis")
      ->check(CLI::PositiveNumber);
  region->add_option("--boundary", cfg.boundary, "N points on the boundary curve")
      ->check(CLI::Range(2, std::numeric_limits<int>::max()));

  auto* pdf = app.add_subcommand("pdf", "Tabulate a mean-value or uncertainty density");
  add_common(pdf, cfg, true);
  pdf->add_option("--which", cfg.which, "Density to tabulate")
      ->required()
      ->check(CLI::IsMember({"mean", "unc", "mean2", "unc2", "mean3", "unc3"}));
  pdf->add_option("--points", cfg.points, "Grid points per axis")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Monte Carlo and quadrature self-checks");
  add_common(verify, cfg, false);
  verify->add_flag("--inject-pdf-bug", cfg.inject_pdf_bug,
                   "Compare one histogram against a wrong density (negative control)");

  auto* witness = app.add_subcommand("witness", "Variance-based entanglement witness");
  add_common(witness, cfg, false);
  witness->add_option("--site", cfg.sites, "Per-site observables 'a0,a1,a2,a3;...' (repeatable)")
      ->allow_extra_args(false)
      ->required();
  witness->add_option("--state", cfg.state, "State to test")
      ->check(CLI::IsMember({"singlet", "ghz", "product", "file"}))
      ->capture_default_str();
  witness->add_option("--state-file", cfg.state_file,
                      "Dense state: JSON array of [re, im] pairs, row-major");
  witness->add_flag("--composite-min", cfg.composite_min,
                    "Also minimize the composite variance sum over all states");
  witness->add_option("--restarts", cfg.restarts, "Restarts for --composite-min")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  Table table;
  int code = kOk;
  try {
    if (bounds->parsed()) {
      cfg.command = "bounds";
      table = cmd_bounds(cfg);
    } else if (region->parsed()) {
      cfg.command = "region";
      table = cmd_region(cfg);
    } else if (pdf->parsed()) {
      cfg.command = "pdf";
      table = cmd_pdf(cfg);
    } else if (verify->parsed()) {
      cfg.command = "verify";
      bool passed = false;
      table = cmd_verify(cfg, err, passed);
      if (!passed) code = kVerifyFailed;
    } else {
      cfg.command = "witness";
      table = cmd_witness(cfg);
    }
  } catch (const UsageError& e) {
    return report_error(err, kUsage, e.what());
  } catch (const DegenerateObservable& e) {
    return report_error(err, kDegenerate, e.what());
  } catch (const LinearlyDependentFamily& e) {
    return report_error(err, kDegenerate, e.what());
  } catch (const AngleConstraintViolated& e) {
    return report_error(err, kDegenerate, e.what());
  } catch (const StateFormatError& e) {
    return report_error(err, kStateFile, e.what());
  } catch (const Error& e) {
    return report_error(err, kUsage, e.what());
  }

  std::ostringstream buffer;
  if (cfg.format == "json") {
    write_json(buffer, Meta{cfg.seed, QUNC_VERSION, cfg.command}, table);
  } else {
    write_csv(buffer, table);
  }
  if (cfg.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(cfg.out_path, std::ios::binary);
    if (!file) return report_error(err, kUsage, fmt::format("cannot write '{}'", cfg.out_path));
    file << buffer.str();
  }
  return code;
}

}  // namespace qunc::cli
