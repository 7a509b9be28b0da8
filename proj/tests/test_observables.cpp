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
#include "qunc/errors.hpp"
#include "qunc/observables.hpp"

using doctest::Approx;
using qunc::Family;
using qunc::QubitObservable;

namespace {

QubitObservable random_observable(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return QubitObservable(g(rng), g(rng), g(rng), g(rng));
}

}  // namespace

TEST_CASE("eigenvalues agree with the 2x2 Hermitian matrix") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const QubitObservable a = random_observable(rng);
    const Eigen::Vector2d ref =
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(oracle::observable(a.offset(), a.vec()))
            .eigenvalues();
    const auto [lo, hi] = qunc::eigenvalues(a);
    CHECK(lo == Approx(ref(0)).epsilon(1e-12));
    CHECK(hi == Approx(ref(1)).epsilon(1e-12));
  }
  const auto [lo, hi] = qunc::eigenvalues(QubitObservable::pauli(2));
  CHECK(lo == -1.0);
  CHECK(hi == 1.0);
}

TEST_CASE("Gram matrix entries, extremes and inverse") {
  std::mt19937_64 rng(2);
  for (int k = 2; k <= 5; ++k) {
    Family f;
    for (int i = 0; i < k; ++i) f.push_back(random_observable(rng));
    const qunc::GramMatrix t = qunc::gram(f);
    CHECK(t.dim() == k);
    Eigen::MatrixXd ref(k, k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) ref(i, j) = f[i].vec().dot(f[j].vec());
    }
    CHECK((t.entries() - ref).norm() < 1e-12);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(ref).eigenvalues();
    CHECK(t.lambda_max() == Approx(ev(k - 1)).epsilon(1e-12));
    CHECK(t.lambda_min() == Approx(ev(0)).scale(ev(k - 1)).epsilon(1e-12));
    CHECK(t.determinant() == Approx(ref.determinant()).scale(std::pow(ev(k - 1), k)).epsilon(1e-12));
    if (k <= 3) CHECK((t.inverse() * ref - Eigen::MatrixXd::Identity(k, k)).norm() < 1e-9);
  }
}

TEST_CASE("identity multiples are rejected") {
  Family f{QubitObservable(1, 0, 0, 0), QubitObservable::pauli(1)};
  CHECK(f[0].degenerate());
  CHECK_THROWS_AS(qunc::gram(f), qunc::DegenerateObservable);
  CHECK(qunc::stack_vectors(f).col(0).norm() == 0.0);
}

TEST_CASE("decomposition of independent and dependent families") {
  const auto x = QubitObservable::pauli(1);
  const auto y = QubitObservable::pauli(2);
  const auto z = QubitObservable::pauli(3);

  auto d = qunc::decompose({x, y});
  CHECK(d.rank == 2);
  CHECK(d.dependent.empty());

  d = qunc::decompose({x, y, z, z});
  CHECK(d.rank == 3);
  CHECK(d.basis == std::vector<int>{0, 1, 2});
  CHECK(d.dependent == std::vector<int>{3});
  CHECK(d.coefficients(0, 0) == Approx(0.0).epsilon(1e-12).scale(1));
  CHECK(d.coefficients(0, 2) == Approx(1.0));

  // Earlier members are preferred for the basis.
  const QubitObservable a(0.5, 1, 2, 0);
  const QubitObservable b(0.0, 2, 4, 0);
  d = qunc::decompose({a, b});
  CHECK(d.rank == 1);
  CHECK(d.basis == std::vector<int>{0});
  CHECK(d.coefficients(0, 0) == Approx(2.0));

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    const Eigen::Vector3d u(g(rng), g(rng), g(rng));
    const Eigen::Vector3d v(g(rng), g(rng), g(rng));
    Family f{QubitObservable(0, u), QubitObservable(0, v), QubitObservable(0, 2 * u - 3 * v),
             QubitObservable(0, u.cross(v))};
    d = qunc::decompose(f);
    CHECK(d.rank == 3);
    CHECK(d.dependent == std::vector<int>{2});
    CHECK(d.reconstruction_error < 1e-10);
    Eigen::Vector3d rebuilt = Eigen::Vector3d::Zero();
    for (int j = 0; j < 3; ++j) rebuilt += d.coefficients(0, j) * f[d.basis[j]].vec();
    CHECK((rebuilt - f[2].vec()).norm() < 1e-10);
  }
}

TEST_CASE("pairwise angles") {
  const auto ang = qunc::angles(QubitObservable::pauli(1), QubitObservable::pauli(2),
                                QubitObservable::pauli(3));
  CHECK(ang.alpha == Approx(std::numbers::pi / 2));
  CHECK(ang.beta == Approx(std::numbers::pi / 2));
  CHECK(ang.gamma == Approx(std::numbers::pi / 2));
  const Eigen::Vector3d u(1, 1e-9, 0);
  CHECK(qunc::angle_between(u, 3 * u) == Approx(0.0));
  CHECK(qunc::angle_between(u, -u) == Approx(std::numbers::pi));
  CHECK(qunc::angle_between({1, 0, 0}, {1, 1, 0}) == Approx(std::numbers::pi / 4));
}
