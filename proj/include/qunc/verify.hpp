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

#ifndef QUNC_VERIFY_HPP
#define QUNC_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qunc/densities.hpp"

namespace qunc {

/// Uniform bins over the box [lo, hi] of basis coordinates.
struct HistogramSpec {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  int bins_per_axis = 1;

  int dims() const { return static_cast<int>(lo.size()); }
  std::int64_t total_bins() const;
};

/// The natural box of a density: [a0 - |a|, a0 + |a|] per axis for means,
/// [0, |a|] for uncertainties.
HistogramSpec histogram_box(const DensityDescriptor& density, int bins_per_axis);

/// Bin frequencies of the means or uncertainties of `family` over n states
/// drawn by sample_purified. Chunked, one seeded stream per chunk.
std::vector<double> sample_histogram(Quantity quantity, const Family& family,
                                     const HistogramSpec& spec, std::int64_t n,
                                     std::uint64_t seed);

/// Exact probability of every bin under the continuous part of `density`.
std::vector<double> bin_masses(const DensityDescriptor& density, const HistogramSpec& spec);

double l1_distance(const std::vector<double>& p, const std::vector<double>& q);

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::int64_t samples = 1000000;
  // Negative control: compare the 1-D uncertainty histogram against the
  // density of a rescaled observable, which must fail.
  bool inject_pdf_bug = false;
};

struct CheckResult {
  std::string name;
  bool passed;
  double statistic;
  double threshold;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;

  bool all_passed() const;
};

/// Monte Carlo and quadrature checks of the samplers, densities, bounds and
/// the Bessel identity. Deterministic for a given seed and sample count.
VerifyReport run_verification(const VerifyOptions& options);

}  // namespace qunc

#endif  // QUNC_VERIFY_HPP
