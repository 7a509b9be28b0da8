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
#include "qunc/densities.hpp"
#include "qunc/errors.hpp"
#include "qunc/states.hpp"

using doctest::Approx;
using qunc::DensityDescriptor;
using qunc::Family;
using qunc::Quantity;
using qunc::QubitObservable;

namespace {

const QubitObservable kA(0.5, 1.0, 0.0, 0.0);
const QubitObservable kB(-0.2, 0.6, 0.9, 0.0);
const QubitObservable kC(0.1, 0.3, -0.4, 1.2);

// Probability of the box [lo, hi] under the uniform ball, by a midpoint
// grid, for either the means or the uncertainties of `family`.
double ball_box_mass(Quantity q, const Family& family, const Eigen::VectorXd& lo,
                     const Eigen::VectorXd& hi, int n = 160) {
  double mass = 0.0;
  oracle::ball_grid(n, [&](const Eigen::Vector3d& r, double w) {
    for (std::size_t k = 0; k < family.size(); ++k) {
      const auto& a = family[k];
      const double v = q == Quantity::mean ? a.offset() + a.vec().dot(r)
                                           : oracle::deviation(a.vec(), r);
      if (v < lo(k) || v > hi(k)) return;
    }
    mass += w;
  });
  return mass;
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("single-observable densities in closed form") {
  const QubitObservable a(0.4, 0.0, 1.2, 1.6);  // |a| = 2
  const auto mean = qunc::pdf_mean(a);
  const auto unc = qunc::pdf_uncertainty(a);
  CHECK(mean.kind() == qunc::DensityKind::continuous);
  // Projection of the uniform ball: 3 / (4|a|) (1 - u^2), u = (m - a0) / |a|.
  for (double m : {-1.5, 0.4, 1.0, 2.3}) {
    const double u = (m - 0.4) / 2.0;
    CHECK(mean(m) == Approx(0.375 * (1 - u * u)).epsilon(1e-13));
  }
  CHECK(mean(2.5) == 0.0);

  // P(Delta <= x) = P(|u| >= c) = 1 - 3c/2 + c^3/2, c = sqrt(1 - (x/|a|)^2).
  const auto cdf = [](double x) {
    const double c = std::sqrt(1 - x * x / 4);
    return 1 - 1.5 * c + 0.5 * c * c * c;
  };
  for (double x : {0.3, 1.0, 1.7, 1.99}) {
    const double h = 1e-5;
    CHECK(unc(x) == Approx((cdf(x + h) - cdf(x - h)) / (2 * h)).epsilon(1e-6));
    CHECK(qunc::box_mass(unc, vec({0.0}), vec({x})) == Approx(cdf(x)).epsilon(1e-10));
  }

  // sigma_3 at 0.5: 3 x^3 / (2 sqrt(1 - x^2)).
  const auto unc_z = qunc::pdf_uncertainty(QubitObservable::pauli(3));
  CHECK(unc_z(0.5) == Approx(1.5 * 0.125 / std::sqrt(0.75)).epsilon(1e-14));
  CHECK(unc_z(0.5) == Approx(0.21650635094610965));
}

TEST_CASE("uncertainty support is half-open at the far face") {
  const auto unc = qunc::pdf_uncertainty(QubitObservable(0, 0, 0, 2));
  CHECK(unc.in_support(vec({0.0})));
  CHECK(unc.in_support(vec({1.999})));
  CHECK_FALSE(unc.in_support(vec({2.0})));
  CHECK(unc(2.0) == 0.0);
  CHECK(unc(-0.1) == 0.0);
}

TEST_CASE("mean pair density equals the chord length of the ball") {
  const auto d = qunc::pdf_mean_pair(kA, kB);
  Eigen::Matrix<double, 2, 3> m;
  m.row(0) = kA.vec().transpose();
  m.row(1) = kB.vec().transpose();
  const double area_scale = kA.vec().cross(kB.vec()).norm();
  std::mt19937_64 g(8);
  std::uniform_real_distribution<double> u(-1.6, 1.6);
  int inside = 0;
  for (int t = 0; t < 400; ++t) {
    const Eigen::Vector2d p(u(g), u(g));
    const Eigen::Vector2d target(p(0) - kA.offset(), p(1) - kB.offset());
    // Minimum-norm Bloch vector with the requested means.
    const Eigen::Vector3d r0 = m.completeOrthogonalDecomposition().solve(target);
    const double chord = r0.squaredNorm() < 1 ? 2 * std::sqrt(1 - r0.squaredNorm()) : 0.0;
    const double ref = 3.0 / (4.0 * oracle::kPi) * chord / area_scale;
    CHECK(d(Eigen::VectorXd(p)) == Approx(ref).epsilon(1e-12).scale(1.0));
    inside += chord > 0;
  }
  CHECK(inside > 50);
}

TEST_CASE("mean triple density is flat inside the image ellipsoid") {
  const auto d = qunc::pdf_mean_triple(kA, kB, kC);
  Eigen::Matrix3d m;
  m.row(0) = kA.vec().transpose();
  m.row(1) = kB.vec().transpose();
  m.row(2) = kC.vec().transpose();
  const double level = 3.0 / (4.0 * oracle::kPi * std::abs(m.determinant()));
  const Eigen::Vector3d offsets(kA.offset(), kB.offset(), kC.offset());
  std::mt19937_64 g(9);
  std::normal_distribution<double> n;
  for (int t = 0; t < 200; ++t) {
    Eigen::Vector3d r(n(g), n(g), n(g));
    const double radius = t % 2 ? 0.97 : 1.03;
    r = radius * r.normalized();
    const Eigen::VectorXd p = m * r + offsets;
    CHECK(d(p) == Approx(t % 2 ? level : 0.0).epsilon(1e-12));
  }
}

TEST_CASE("all six densities are normalized") {
  const std::vector<DensityDescriptor> ds = {
      qunc::pdf_mean(kA),
      qunc::pdf_uncertainty(kA),
      qunc::pdf_mean_pair(kA, kB),
      qunc::pdf_uncertainty_pair(kA, kB),
      qunc::pdf_mean_triple(kA, kB, kC),
      qunc::pdf_uncertainty_triple(kA, kB, kC),
  };
  for (const auto& d : ds) CHECK(qunc::normalization(d) == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("box masses agree with a grid integral over the ball") {
  struct Case {
    Quantity q;
    Family f;
    Eigen::VectorXd lo;
    Eigen::VectorXd hi;
  };
  const std::vector<Case> cases = {
      {Quantity::mean, {kA}, vec({-0.1}), vec({0.9})},
      {Quantity::uncertainty, {kA}, vec({0.2}), vec({0.8})},
      {Quantity::mean, {kA, kB}, vec({0.0, -0.9}), vec({1.2, 0.3})},
      {Quantity::uncertainty, {kA, kB}, vec({0.3, 0.4}), vec({0.9, 1.0})},
      {Quantity::mean, {kA, kB, kC}, vec({0.0, -0.8, -0.5}), vec({1.3, 0.2, 0.9})},
      {Quantity::uncertainty, {kA, kB, kC}, vec({0.4, 0.3, 0.6}), vec({1.0, 1.0, 1.2})},
  };
  for (const auto& c : cases) {
    const DensityDescriptor d(c.q, c.f);
    const double got = qunc::box_mass(d, c.lo, c.hi);
    const double ref = ball_box_mass(c.q, c.f, c.lo, c.hi);
    CAPTURE(c.f.size());
    CAPTURE(static_cast<int>(c.q));
    CHECK(got > 0.05);
    CHECK(got == Approx(ref).epsilon(2e-3));
  }
}

TEST_CASE("support of the uncertainty pair is the set of attainable tuples") {
  const auto d = qunc::pdf_uncertainty_pair(kA, kB);
  qunc::Rng rng(21);
  for (int i = 0; i < 20000; ++i) {
    const auto s = qunc::sample_purified(rng);
    const Eigen::Vector2d x(qunc::deviation(kA, s), qunc::deviation(kB, s));
    if (x(0) >= kA.norm() || x(1) >= kB.norm()) continue;
    CHECK_MESSAGE(d.in_support(x), "attainable tuple outside the support");
  }
  CHECK_FALSE(d.in_support(Eigen::Vector2d(0.01, 0.01)));
}

TEST_CASE("dependent families carry explicit constraints") {
  const QubitObservable b(0.3, 2.0, 0.0, 0.0);  // parallel to kA
  const auto mean = qunc::pdf_mean_pair(kA, b);
  CHECK(mean.kind() == qunc::DensityKind::constrained);
  CHECK(mean.rank() == 1);
  REQUIRE(mean.affine_constraints().size() == 1);
  CHECK(qunc::normalization(mean) == Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(qunc::pdf_uncertainty_pair(kA, b), qunc::LinearlyDependentFamily);
  CHECK_THROWS_AS(qunc::pdf_uncertainty_triple(kA, kB, QubitObservable(0, 1, 1, 0)),
                  qunc::LinearlyDependentFamily);

  const Family f = {QubitObservable::pauli(1), QubitObservable::pauli(2),
                    QubitObservable::pauli(3), QubitObservable(0.2, 1.0, -2.0, 0.5)};
  const auto unc = qunc::pdf_uncertainty_n(f);
  const auto means = qunc::pdf_mean_n(f);
  CHECK(unc.rank() == 3);
  CHECK(unc.root_constraints().size() == 1);
  qunc::Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto s = qunc::sample_purified(rng);
    Eigen::VectorXd m(4);
    Eigen::VectorXd x(4);
    for (int k = 0; k < 4; ++k) {
      m(k) = qunc::mean(f[k], s);
      x(k) = qunc::deviation(f[k], s);
    }
    CHECK(means.constraint_residual(m) < 1e-12);
    CHECK(unc.constraint_residual(x) < 1e-9);
    CHECK((unc.project(x) - x.head(3)).norm() == 0.0);
  }
  // A tuple that breaks the relation.
  CHECK(unc.constraint_residual(Eigen::Vector4d(0.5, 0.5, 0.5, 0.1)) > 1e-3);
}

TEST_CASE("Bessel integral identity by quadrature") {
  for (double lambda : {0.0, 0.3, 0.6, 0.9}) {
    CHECK(qunc::bessel_identity_check(lambda) ==
          Approx(std::sqrt(1 - lambda * lambda)).epsilon(1e-3).scale(1.0));
  }
  CHECK(std::abs(qunc::bessel_identity_check(1.5)) < 1e-3);
  CHECK(std::abs(qunc::bessel_identity_check(2.5)) < 1e-3);
}
