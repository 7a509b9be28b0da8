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

#ifndef QUNC_BOUNDS_HPP
#define QUNC_BOUNDS_HPP

#include <string>

#include "qunc/observables.hpp"
#include "qunc/regions.hpp"

namespace qunc {

enum class BoundKind { variance_sum, deviation_sum };
enum class BoundMethod { eigenvalue_formula, cross_product_formula, brute_force, dependent_family };

std::string to_string(BoundKind kind);
std::string to_string(BoundMethod method);

struct BoundReport {
  BoundKind kind;
  double value;
  // Uncertainty tuple of a state attaining the bound.
  RegionPoint argmin_point;
  BoundMethod method;
  // The pure state (Bloch vector) behind argmin_point.
  Vec3 argmin_state;
};

/// Smallest eigenvalue of the pair Gram matrix. Linearly dependent pairs
/// give 0 (a common eigenstate) with method dependent_family.
BoundReport variance_sum_bound_pair(const QubitObservable& a, const QubitObservable& b);

/// |a x b| / max(|a|, |b|), attained at an axis intercept of the boundary.
/// For |a| = |b| the intercept (0, |b| sin t) is reported.
BoundReport deviation_sum_bound_pair(const QubitObservable& a, const QubitObservable& b);

/// Tr T - lambda_max(T). Throws LinearlyDependentFamily unless rank 3.
BoundReport variance_sum_bound_triple(const QubitObservable& a, const QubitObservable& b,
                                      const QubitObservable& c);

/// sum |a_i|^2 - lambda_max(M M^T) for any family size.
BoundReport variance_sum_bound_n(const Family& family);

enum class Objective { sum_of_squares, sum };

/// Minimum of sum x_k^2 or sum x_k over pure states: the best of
/// resolution^2 Fibonacci-sphere points, refined by Nelder-Mead.
BoundReport brute_force_min(const Family& family, Objective objective, int resolution = 400);

}  // namespace qunc

#endif  // QUNC_BOUNDS_HPP
