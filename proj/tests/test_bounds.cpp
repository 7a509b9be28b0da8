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
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "oracles.hpp"
#include "qunc/bounds.hpp"
#include "qunc/errors.hpp"
#include "qunc/regions.hpp"
#include "qunc/states.hpp"

using doctest::Approx;
using qunc::BoundMethod;
using qunc::Family;
using qunc::QubitObservable;

namespace {

constexpr double kPi = std::numbers::pi;

QubitObservable polar(double theta, double len = 1.0, double offset = 0.0) {
  return QubitObservable(offset, len * std::cos(theta), len * std::sin(theta), 0.0);
}

Family random_family(std::mt19937_64& g, int n) {
  std::normal_distribution<double> d;
  Family f;
  for (int i = 0; i < n; ++i) f.emplace_back(d(g), d(g), d(g), d(g));
  return f;
}

double oracle_min(const Family& f, bool squares) {
  return oracle::sphere_min([&](const Eigen::Vector3d& r) {
    double s = 0;
    for (const auto& a : f) {
      const double dev = oracle::deviation(a.vec(), r);
      s += squares ? dev * dev : dev;
    }
    return s;
  });
}

}  // namespace

TEST_CASE("pair bounds on hand-checkable families") {
  const auto x = QubitObservable::pauli(1);
  const auto z = QubitObservable::pauli(3);
  CHECK(qunc::variance_sum_bound_pair(x, z).value == Approx(1.0));
  CHECK(qunc::deviation_sum_bound_pair(x, z).value == Approx(1.0));
  const QubitObservable a2(0, 2, 0, 0);
  const QubitObservable b1(0, 0, 1, 0);
  CHECK(qunc::variance_sum_bound_pair(a2, b1).value == Approx(1.0));
  CHECK(qunc::deviation_sum_bound_pair(a2, b1).value == Approx(1.0));
  for (double theta : {0.1, 0.7, kPi / 2, 2.0, 3.0}) {
    CHECK(qunc::variance_sum_bound_pair(polar(0), polar(theta)).value ==
          Approx(1 - std::abs(std::cos(theta))).epsilon(1e-14));
    CHECK(qunc::deviation_sum_bound_pair(polar(0), polar(theta)).value ==
          Approx(std::abs(std::sin(theta))).epsilon(1e-14));
  }
  // Increasing in theta on [0, pi/2].
  double prev = -1;
  for (int i = 0; i <= 100; ++i) {
    const double v = qunc::variance_sum_bound_pair(polar(0), polar(kPi / 2 * i / 100)).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("pair bounds are tight against a sphere search") {
  std::mt19937_64 g(10);
  for (int t = 0; t < 25; ++t) {
    const Family f = random_family(g, 2);
    const auto var = qunc::variance_sum_bound_pair(f[0], f[1]);
    const auto dev = qunc::deviation_sum_bound_pair(f[0], f[1]);
    CHECK(var.value == Approx(oracle_min(f, true)).epsilon(1e-7));
    CHECK(dev.value == Approx(oracle_min(f, false)).epsilon(1e-7));
    CHECK(var.method == BoundMethod::eigenvalue_formula);
    CHECK(dev.method == BoundMethod::cross_product_formula);

    const qunc::RegionSpec spec(f);
    for (const auto* r : {&var, &dev}) {
      CHECK(qunc::contains_pair(spec, r->argmin_point));
      // The reported state reproduces the reported tuple.
      for (int k = 0; k < 2; ++k) {
        CHECK(oracle::deviation(f[k].vec(), r->argmin_state) ==
              Approx(r->argmin_point.coords(k)).epsilon(1e-7));
      }
    }
    CHECK(var.argmin_point.coords.squaredNorm() == Approx(var.value).epsilon(1e-9));
    CHECK(dev.argmin_point.coords.sum() == Approx(dev.value).epsilon(1e-9));
  }
}

TEST_CASE("deviation bound tie picks the y-axis intercept") {
  const auto r = qunc::deviation_sum_bound_pair(polar(0), polar(1.0));
  CHECK(r.argmin_point.coords(0) == Approx(0.0));
  CHECK(r.argmin_point.coords(1) == Approx(std::sin(1.0)));
}

TEST_CASE("bounds ignore offsets") {
  const auto a = polar(0.3, 1.4, 0.0);
  const auto b = polar(1.9, 0.6, 0.0);
  const auto a_shift = polar(0.3, 1.4, 5.0);
  const auto b_shift = polar(1.9, 0.6, -2.0);
  CHECK(qunc::variance_sum_bound_pair(a, b).value == qunc::variance_sum_bound_pair(a_shift, b_shift).value);
  CHECK(qunc::deviation_sum_bound_pair(a, b).value == qunc::deviation_sum_bound_pair(a_shift, b_shift).value);
}

TEST_CASE("dependent pairs have bound zero") {
  const auto r = qunc::variance_sum_bound_pair(polar(0.5), polar(0.5 + kPi, 3.0));
  CHECK(r.value == 0.0);
  CHECK(r.method == BoundMethod::dependent_family);
  CHECK(qunc::deviation_sum_bound_pair(polar(0.5), polar(0.5, 2.0)).value == Approx(0.0).epsilon(1e-15));
}

TEST_CASE("triple bound closed forms") {
  for (double theta : {kPi / 6, kPi / 4, kPi / 3, kPi / 2}) {
    // Three unit vectors with equal pairwise angles theta.
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Eigen::Vector3d u(1, 0, 0);
    const Eigen::Vector3d v(c, s, 0);
    const double wy = (c - c * c) / s;
    const Eigen::Vector3d w(c, wy, std::sqrt(1 - c * c - wy * wy));
    const auto r = qunc::variance_sum_bound_triple(QubitObservable(0, u), QubitObservable(0, v),
                                                   QubitObservable(0, w));
    CHECK(r.value == Approx(2 * (1 - c)).epsilon(1e-13));
  }
  for (double alpha : {0.3, 1.0, kPi / 2, 2.0}) {
    // b and c at angle alpha, both orthogonal to a. Past pi/2 the largest
    // eigenvalue is 1 - cos(alpha), so the closed form takes |cos(alpha)|.
    const QubitObservable a(0, 0, 0, 1);
    const auto r = qunc::variance_sum_bound_triple(a, polar(0.4), polar(0.4 + alpha));
    CHECK(r.value == Approx(2 - std::abs(std::cos(alpha))).epsilon(1e-13));
  }
  const auto p = qunc::variance_sum_bound_triple(QubitObservable::pauli(1), QubitObservable::pauli(2),
                                                 QubitObservable::pauli(3));
  CHECK(p.value == Approx(2.0));
  CHECK_THROWS_AS(qunc::variance_sum_bound_triple(polar(0.1), polar(0.2), polar(0.3)),
                  qunc::LinearlyDependentFamily);
}

TEST_CASE("triple and general bounds are tight against a sphere search") {
  std::mt19937_64 g(11);
  for (int n : {3, 3, 3, 4, 5, 5}) {
    const Family f = random_family(g, n);
    const double ref = oracle_min(f, true);
    const auto r = qunc::variance_sum_bound_n(f);
    CHECK(r.value == Approx(ref).epsilon(1e-7));
    if (n == 3) CHECK(qunc::variance_sum_bound_triple(f[0], f[1], f[2]).value == Approx(r.value).epsilon(1e-12));
    CHECK(qunc::contains_n(qunc::RegionSpec(f), r.argmin_point));
  }
  const Family g2 = random_family(g, 2);
  CHECK(qunc::variance_sum_bound_n(g2).value == Approx(qunc::variance_sum_bound_pair(g2[0], g2[1]).value).epsilon(1e-12));
}

TEST_CASE("general bound examples") {
  const auto x = QubitObservable::pauli(1);
  const auto y = QubitObservable::pauli(2);
  const auto z = QubitObservable::pauli(3);
  CHECK(qunc::variance_sum_bound_n({x, y, z, z}).value == Approx(2.0));
  CHECK(qunc::variance_sum_bound_n({z, z, z, z}).value == Approx(0.0).epsilon(1e-14));
}

TEST_CASE("brute-force minimizer examples") {
  const auto x = QubitObservable::pauli(1);
  const auto y = QubitObservable::pauli(2);
  const auto z = QubitObservable::pauli(3);
  const auto ss = qunc::Objective::sum_of_squares;
  CHECK(std::abs(qunc::brute_force_min({x, z}, ss).value - 1.0) < 1e-4);
  CHECK(std::abs(qunc::brute_force_min({x, y, z}, ss).value - 2.0) < 1e-4);
  CHECK(std::abs(qunc::brute_force_min({x, z}, qunc::Objective::sum).value - 1.0) < 1e-4);
  CHECK(qunc::brute_force_min({x, z}, ss).method == BoundMethod::brute_force);
}
