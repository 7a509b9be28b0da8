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

#include "qunc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "qunc/bounds.hpp"
#include "qunc/errors.hpp"
#include "qunc/parallel.hpp"
#include "qunc/states.hpp"
#include "qunc/stats.hpp"

namespace qunc {

std::int64_t HistogramSpec::total_bins() const {
  std::int64_t n = 1;
  for (int k = 0; k < dims(); ++k) n *= bins_per_axis;
  return n;
}

HistogramSpec histogram_box(const DensityDescriptor& density, int bins_per_axis) {
  const Eigen::VectorXd& n = density.basis_norms();
  if (density.quantity() == Quantity::mean) {
    return {density.basis_offsets() - n, density.basis_offsets() + n, bins_per_axis};
  }
  return {Eigen::VectorXd::Zero(n.size()), n, bins_per_axis};
}

std::vector<double> sample_histogram(Quantity quantity, const Family& family,
                                     const HistogramSpec& spec, std::int64_t n,
                                     std::uint64_t seed) {
  if (static_cast<int>(family.size()) != spec.dims()) {
    throw DimensionMismatch("histogram dimension differs from family size");
  }
  constexpr int kChunks = 16;
  const auto partial = map_chunks<std::vector<std::int64_t>>(kChunks, [&](int chunk) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(spec.total_bins()), 0);
    Rng rng(worker_seed(seed, static_cast<std::uint64_t>(chunk)));
    for (std::int64_t i = chunk_size(n, kChunks, chunk); i > 0; --i) {
      const BlochState s = sample_purified(rng);
      std::int64_t index = 0;
      std::int64_t stride = 1;
      for (int k = 0; k < spec.dims(); ++k) {
        const double v = quantity == Quantity::mean ? mean(family[k], s) : deviation(family[k], s);
        const double t = (v - spec.lo(k)) / (spec.hi(k) - spec.lo(k));
        const auto b = std::clamp(static_cast<std::int64_t>(std::floor(t * spec.bins_per_axis)),
                                  std::int64_t{0}, std::int64_t{spec.bins_per_axis - 1});
        index += b * stride;
        stride *= spec.bins_per_axis;
      }
      ++counts[static_cast<std::size_t>(index)];
    }
    return counts;
  });
  std::vector<double> freq(static_cast<std::size_t>(spec.total_bins()), 0.0);
  for (const auto& counts : partial) {
    for (std::size_t b = 0; b < freq.size(); ++b) freq[b] += static_cast<double>(counts[b]);
  }
  for (double& f : freq) f /= static_cast<double>(n);
  return freq;
}

std::vector<double> bin_masses(const DensityDescriptor& density, const HistogramSpec& spec) {
  const int dims = spec.dims();
  std::vector<double> masses(static_cast<std::size_t>(spec.total_bins()));
  Eigen::VectorXd lo(dims);
  Eigen::VectorXd hi(dims);
  for (std::int64_t index = 0; index < spec.total_bins(); ++index) {
    std::int64_t rest = index;
    for (int k = 0; k < dims; ++k) {
      const auto b = static_cast<double>(rest % spec.bins_per_axis);
      rest /= spec.bins_per_axis;
      const double width = (spec.hi(k) - spec.lo(k)) / spec.bins_per_axis;
      lo(k) = spec.lo(k) + b * width;
      hi(k) = b + 1 == spec.bins_per_axis ? spec.hi(k) : spec.lo(k) + (b + 1) * width;
    }
    masses[static_cast<std::size_t>(index)] = box_mass(density, lo, hi);
  }
  return masses;
}

double l1_distance(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw DimensionMismatch("l1_distance of different lengths");
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(p[i] - q[i]);
  return total;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

QubitObservable random_observable(Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double a0 = g(rng);
  const double a1 = g(rng);
  const double a2 = g(rng);
  const double a3 = g(rng);
  return QubitObservable(a0, a1, a2, a3);
}

std::vector<BlochState> draw(std::int64_t n, std::uint64_t seed, bool purified) {
  Rng rng(seed);
  std::vector<BlochState> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(purified ? sample_purified(rng) : sample_spectral(rng));
  return out;
}

CheckResult at_most(std::string name, double statistic, double threshold) {
  return {std::move(name), statistic <= threshold, statistic, threshold};
}

CheckResult at_least(std::string name, double statistic, double threshold) {
  return {std::move(name), statistic >= threshold, statistic, threshold};
}

// Streams are keyed per check so adding a check never shifts the others.
enum Stream : std::uint64_t {
  kPurified = 1,
  kSpectral,
  kTwoSampleA,
  kTwoSampleB,
  kHistogram = 100,
  kCharFn = 200,
  kBounds = 300,
};

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport report;
  const std::int64_t n = std::max<std::int64_t>(options.samples, 1);
  const std::uint64_t seed = options.seed;
  const double root_n = std::sqrt(static_cast<double>(n));
  if (n < 1000) {
    report.warnings.push_back("samples = " + std::to_string(n) +
                              " is below 1000; KS and histogram checks have little power");
  }

  // Samplers.
  const auto purified = draw(n, worker_seed(seed, kPurified), true);
  const auto spectral = draw(n, worker_seed(seed, kSpectral), false);
  const auto cube = [](const std::vector<BlochState>& states) {
    std::vector<double> v;
    for (const auto& s : states) v.push_back(std::pow(s.r().norm(), 3));
    return v;
  };
  const auto uniform_cdf = [](double t) { return std::clamp(t, 0.0, 1.0); };
  report.checks.push_back(at_most("radius_cubed_uniform_purified",
                                  stats::ks_statistic(cube(purified), uniform_cdf), 1.63 / root_n));
  report.checks.push_back(at_most("radius_cubed_uniform_spectral",
                                  stats::ks_statistic(cube(spectral), uniform_cdf), 1.63 / root_n));
  {
    std::vector<double> lambda1;
    for (const auto& s : purified) lambda1.push_back(0.5 * (1.0 - s.r().norm()));
    const auto cdf = [](double l) {
      const double t = std::clamp(1.0 - 2.0 * l, 0.0, 1.0);
      return 1.0 - t * t * t;
    };
    report.checks.push_back(
        at_most("lambda1_cdf_purified", stats::ks_statistic(lambda1, cdf), 1.63 / root_n));
  }
  {
    const std::int64_t m = std::min<std::int64_t>(n, 100000);
    std::vector<double> a;
    std::vector<double> b;
    for (const auto& s : draw(m, worker_seed(seed, kTwoSampleA), true)) a.push_back(s.r().norm());
    for (const auto& s : draw(m, worker_seed(seed, kTwoSampleB), false)) b.push_back(s.r().norm());
    const double d = stats::ks_two_sample(a, b);
    const double ne = static_cast<double>(m) / 2.0;
    report.checks.push_back(at_least("samplers_two_sample_ks_pvalue", stats::ks_pvalue(d, ne), 1e-3));
  }

  // Densities: normalization and Monte Carlo histograms.
  const QubitObservable a(0.5, 1.0, 0.0, 0.0);
  const QubitObservable b(-0.2, 0.6, 0.9, 0.0);
  const QubitObservable c(0.1, 0.3, -0.4, 1.2);
  struct DensityCase {
    std::string name;
    Family family;
    Quantity quantity;
    double norm_tol;
    int bins;
    double l1_tol;
  };
  const std::vector<DensityCase> cases = {
      {"mean", {a}, Quantity::mean, 1e-10, 40, 0.01},
      {"unc", {a}, Quantity::uncertainty, 1e-8, 40, 0.01},
      {"mean2", {a, b}, Quantity::mean, 1e-6, 16, 0.02},
      {"unc2", {a, b}, Quantity::uncertainty, 1e-6, 16, 0.02},
      {"mean3", {a, b, c}, Quantity::mean, 1e-4, 10, 0.05},
      {"unc3", {a, b, c}, Quantity::uncertainty, 1e-4, 10, 0.05},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const DensityCase& dc = cases[i];
    const DensityDescriptor density(dc.quantity, dc.family);
    report.checks.push_back(
        at_most("normalization_" + dc.name, std::abs(normalization(density) - 1.0), dc.norm_tol));

    const HistogramSpec spec = histogram_box(density, dc.bins);
    const auto freq = sample_histogram(dc.quantity, dc.family, spec, n,
                                       worker_seed(seed, kHistogram + i));
    Family analytic_family = dc.family;
    if (options.inject_pdf_bug && dc.name == "unc") {
      analytic_family[0] = QubitObservable(a.offset(), 1.1 * a.vec());
    }
    const DensityDescriptor analytic(dc.quantity, analytic_family);
    report.checks.push_back(
        at_most("histogram_l1_" + dc.name, l1_distance(freq, bin_masses(analytic, spec)), dc.l1_tol));
  }

  // Characteristic function against the sampled average of exp(-i <A>).
  {
    Rng obs_rng(worker_seed(seed, kCharFn));
    for (int i = 0; i < 5; ++i) {
      const QubitObservable o = random_observable(obs_rng);
      Rng rng(worker_seed(seed, kCharFn + 1 + static_cast<std::uint64_t>(i)));
      std::complex<double> acc = 0.0;
      for (std::int64_t k = 0; k < n; ++k) {
        const double m = mean(o, sample_purified(rng));
        acc += std::complex<double>(std::cos(m), -std::sin(m));
      }
      acc /= static_cast<double>(n);
      report.checks.push_back(
          at_most("char_fn_" + std::to_string(i), std::abs(acc - char_fn(o)), 4.0 / root_n));
    }
  }

  // Bounds against brute force.
  {
    Rng rng(worker_seed(seed, kBounds));
    double var_err = 0.0;
    double dev_err = 0.0;
    double tri_err = 0.0;
    for (int i = 0; i < 10; ++i) {
      const QubitObservable p = random_observable(rng);
      const QubitObservable q = random_observable(rng);
      const QubitObservable r = random_observable(rng);
      var_err = std::max(var_err, std::abs(variance_sum_bound_pair(p, q).value -
                                           brute_force_min({p, q}, Objective::sum_of_squares).value));
      dev_err = std::max(dev_err, std::abs(deviation_sum_bound_pair(p, q).value -
                                           brute_force_min({p, q}, Objective::sum).value));
      tri_err = std::max(tri_err, std::abs(variance_sum_bound_triple(p, q, r).value -
                                           brute_force_min({p, q, r}, Objective::sum_of_squares).value));
    }
    report.checks.push_back(at_most("variance_bound_pair_vs_brute_force", var_err, 1e-3));
    report.checks.push_back(at_most("deviation_bound_pair_vs_brute_force", dev_err, 1e-3));
    report.checks.push_back(at_most("variance_bound_triple_vs_brute_force", tri_err, 1e-3));
  }

  {
    double worst = 0.0;
    for (double lambda : {0.0, 0.3, 0.6, 0.9, 1.5}) {
      const double expected = lambda < 1.0 ? std::sqrt(1.0 - lambda * lambda) : 0.0;
      worst = std::max(worst, std::abs(bessel_identity_check(lambda) - expected));
    }
    report.checks.push_back(at_most("bessel_identity", worst, 1e-3));
  }
  return report;
}

}  // namespace qunc
