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

#ifndef QUNC_QUADRATURE_HPP
#define QUNC_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace qunc::quad {

using Integrand = std::function<double(double)>;

struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-10;
};

/// Adaptive integral of f over [a, b]. Interior breakpoints (points where
/// f has kinks, jumps or integrable singularities) are honoured when given;
/// points outside (a, b) are dropped.
double integrate(const Integrand& f, double a, double b, Tolerance tol = {},
                 std::vector<double> breakpoints = {});

/// Fixed-order Gauss-Legendre rule on [a, b].
double gauss_legendre(const Integrand& f, double a, double b, int order);

}  // namespace qunc::quad

#endif  // QUNC_QUADRATURE_HPP
