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

#ifndef QUNC_STATS_HPP
#define QUNC_STATS_HPP

#include <functional>
#include <vector>

namespace qunc::stats {

/// sup |F_n - F| of a one-sample empirical CDF against `cdf`.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// sup |F_n - G_m| of two empirical CDFs.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Kolmogorov survival function Q(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2).
double kolmogorov_survival(double t);

/// Asymptotic p-value of statistic d with effective sample size n, using
/// the (sqrt n + 0.12 + 0.11 / sqrt n) small-sample correction.
double ks_pvalue(double d, double n_effective);

}  // namespace qunc::stats

#endif  // QUNC_STATS_HPP
