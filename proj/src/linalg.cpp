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

#include "qunc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace qunc::linalg {

namespace {

template <typename Vec>
Vec fix_sign(Vec v) {
  Eigen::Index i = 0;
  v.cwiseAbs().maxCoeff(&i);
  if (v(i) < 0.0) v = -v;
  return v;
}

}  // namespace

std::array<double, 2> sym_eigenvalues(const Eigen::Matrix2d& m) {
  const double a = m(0, 0);
  const double b = 0.5 * (m(0, 1) + m(1, 0));
  const double d = m(1, 1);
  const double mid = 0.5 * (a + d);
  const double half_gap = 0.5 * std::hypot(a - d, 2.0 * b);
  return {mid - half_gap, mid + half_gap};
}

Eigen::Vector2d sym_eigenvector(const Eigen::Matrix2d& m, double lambda) {
  const Eigen::Matrix2d shifted = m - lambda * Eigen::Matrix2d::Identity();
  const Eigen::Vector2d r0 = shifted.row(0).transpose();
  const Eigen::Vector2d r1 = shifted.row(1).transpose();
  const Eigen::Vector2d& row = r0.squaredNorm() >= r1.squaredNorm() ? r0 : r1;
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  if (row.norm() <= 1e-14 * scale) return Eigen::Vector2d::UnitX();
  return fix_sign(Eigen::Vector2d(-row(1), row(0)).normalized());
}

Eigen::Vector3d sym_eigenvector(const Eigen::Matrix3d& m, double lambda) {
  const Eigen::Matrix3d shifted = m - lambda * Eigen::Matrix3d::Identity();
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);

  const std::array<Eigen::Vector3d, 3> rows = {
      shifted.row(0).transpose(), shifted.row(1).transpose(),
      shifted.row(2).transpose()};
  const std::array<Eigen::Vector3d, 3> crosses = {rows[0].cross(rows[1]),
                                                  rows[0].cross(rows[2]),
                                                  rows[1].cross(rows[2])};
  const auto best_cross = std::max_element(
      crosses.begin(), crosses.end(),
      [](const auto& x, const auto& y) { return x.squaredNorm() < y.squaredNorm(); });
  if (best_cross->norm() > 1e-14 * scale * scale) {
    return fix_sign(Eigen::Vector3d(best_cross->normalized()));
  }

  // rank(m - lambda I) <= 1: any vector orthogonal to the surviving row works.
  const auto best_row = std::max_element(
      rows.begin(), rows.end(),
      [](const auto& x, const auto& y) { return x.squaredNorm() < y.squaredNorm(); });
  if (best_row->norm() <= 1e-14 * scale) return Eigen::Vector3d::UnitX();
  const Eigen::Vector3d n = best_row->normalized();
  Eigen::Index axis = 0;
  n.cwiseAbs().minCoeff(&axis);
  return fix_sign(Eigen::Vector3d(n.cross(Eigen::Vector3d::Unit(axis)).normalized()));
}

std::array<double, 3> sym_eigenvalues(const Eigen::Matrix3d& m_in) {
  const Eigen::Matrix3d m = 0.5 * (m_in + m_in.transpose());
  const double off = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
  std::array<double, 3> eig{};
  if (off == 0.0) {
    eig = {m(0, 0), m(1, 1), m(2, 2)};
    std::sort(eig.begin(), eig.end());
    return eig;
  }

  const double q = m.trace() / 3.0;
  const double p2 = (m(0, 0) - q) * (m(0, 0) - q) + (m(1, 1) - q) * (m(1, 1) - q) +
                    (m(2, 2) - q) * (m(2, 2) - q) + 2.0 * off;
  const double p = std::sqrt(p2 / 6.0);
  const Eigen::Matrix3d b = (m - q * Eigen::Matrix3d::Identity()) / p;
  const double r = std::clamp(0.5 * b.determinant(), -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;

  const double largest = q + 2.0 * p * std::cos(phi);
  const double smallest = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  eig = {smallest, 3.0 * q - largest - smallest, largest};

  for (double& lambda : eig) {
    const Eigen::Vector3d v = sym_eigenvector(m, lambda);
    lambda = v.dot(m * v);
  }
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace qunc::linalg
