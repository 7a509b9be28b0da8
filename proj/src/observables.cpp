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

#include "qunc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qunc/errors.hpp"
#include "qunc/linalg.hpp"

namespace qunc {

QubitObservable QubitObservable::pauli(int axis) {
  if (axis < 1 || axis > 3) {
    throw DomainError("pauli axis must be 1, 2 or 3, got " + std::to_string(axis));
  }
  return QubitObservable(0.0, Vec3::Unit(axis - 1));
}

std::pair<double, double> eigenvalues(const QubitObservable& obs) {
  const double n = obs.norm();
  return {obs.offset() - n, obs.offset() + n};
}

GramMatrix::GramMatrix(Eigen::Matrix3Xd columns)
    : columns_(std::move(columns)),
      entries_(columns_.transpose() * columns_),
      frame_(columns_ * columns_.transpose()) {}

double GramMatrix::determinant() const {
  switch (dim()) {
    case 1:
      return entries_(0, 0);
    case 2:
      return Vec3(columns_.col(0)).cross(Vec3(columns_.col(1))).squaredNorm();
    case 3: {
      const double v = Eigen::Matrix3d(columns_).determinant();
      return v * v;
    }
    default:
      return 0.0;  // rank <= 3 < k
  }
}

double GramMatrix::lambda_min() const {
  switch (dim()) {
    case 1:
      return entries_(0, 0);
    case 2:
      return linalg::sym_eigenvalues(Eigen::Matrix2d(entries_))[0];
    case 3:
      return linalg::sym_eigenvalues(frame_)[0];
    default:
      return 0.0;
  }
}

double GramMatrix::lambda_max() const {
  switch (dim()) {
    case 1:
      return entries_(0, 0);
    case 2:
      return linalg::sym_eigenvalues(Eigen::Matrix2d(entries_))[1];
    default:
      return linalg::sym_eigenvalues(frame_)[2];
  }
}

Eigen::MatrixXd GramMatrix::inverse() const { return entries_.inverse(); }

Eigen::Matrix3Xd stack_vectors(const Family& family) {
  Eigen::Matrix3Xd m(3, static_cast<Eigen::Index>(family.size()));
  for (std::size_t i = 0; i < family.size(); ++i) m.col(i) = family[i].vec();
  return m;
}

GramMatrix gram(const Family& family) {
  if (family.empty()) throw DomainError("gram: empty family");
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].degenerate()) {
      throw DegenerateObservable("observable " + std::to_string(i) +
                                 " has |a| = 0 (identity multiple)");
    }
  }
  return GramMatrix(stack_vectors(family));
}

FamilyDecomposition decompose(const Family& family, double tol) {
  if (family.empty()) throw DomainError("decompose: empty family");
  const Eigen::Matrix3Xd m = stack_vectors(family);
  const int n = static_cast<int>(family.size());

  // Singular values straight from M: square roots of the frame eigenvalues
  // would put rounding noise of order sqrt(eps) on the vanishing ones.
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::Matrix3Xd>(m).singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;

  FamilyDecomposition out;
  if (sigma_max == 0.0) {
    for (int i = 0; i < n; ++i) out.dependent.push_back(i);
    out.coefficients = Eigen::MatrixXd::Zero(n, 0);
    return out;
  }
  out.rank = static_cast<int>((sv.array() > tol * sigma_max).count());

  // Greedy pass in family order over an orthonormalized running basis.
  std::vector<Vec3> q;
  std::vector<bool> chosen(n, false);
  const auto residual = [&](int i) {
    Vec3 r = m.col(i);
    for (const Vec3& e : q) r -= e.dot(r) * e;
    return r;
  };
  for (int i = 0; i < n && static_cast<int>(q.size()) < out.rank; ++i) {
    const Vec3 r = residual(i);
    if (r.norm() > tol * sigma_max) {
      q.push_back(r.normalized());
      chosen[i] = true;
    }
  }
  // Borderline families: fill up with the largest remaining residuals.
  while (static_cast<int>(q.size()) < out.rank) {
    int best = -1;
    double best_norm = -1.0;
    for (int i = 0; i < n; ++i) {
      if (chosen[i]) continue;
      const double rn = residual(i).norm();
      if (rn > best_norm) {
        best_norm = rn;
        best = i;
      }
    }
    q.push_back(residual(best).normalized());
    chosen[best] = true;
  }

  for (int i = 0; i < n; ++i) (chosen[i] ? out.basis : out.dependent).push_back(i);

  Eigen::Matrix3Xd b(3, out.rank);
  for (int j = 0; j < out.rank; ++j) b.col(j) = m.col(out.basis[j]);
  const auto qr = b.colPivHouseholderQr();
  out.coefficients.resize(static_cast<Eigen::Index>(out.dependent.size()), out.rank);
  for (std::size_t l = 0; l < out.dependent.size(); ++l) {
    const Vec3 target = m.col(out.dependent[l]);
    const Eigen::VectorXd kappa = qr.solve(target);
    out.coefficients.row(static_cast<Eigen::Index>(l)) = kappa.transpose();
    out.reconstruction_error =
        std::max(out.reconstruction_error, (b * kappa - target).cwiseAbs().maxCoeff());
  }
  return out;
}

double angle_between(const Vec3& u, const Vec3& v) {
  const double c = u.dot(v) / (u.norm() * v.norm());
  return std::acos(std::clamp(c, -1.0, 1.0));
}

Angles angles(const QubitObservable& a, const QubitObservable& b,
              const QubitObservable& c) {
  if (a.degenerate() || b.degenerate() || c.degenerate()) {
    throw DegenerateObservable("angles: observable with |a| = 0");
  }
  return {angle_between(b.vec(), c.vec()), angle_between(a.vec(), c.vec()),
          angle_between(a.vec(), b.vec())};
}

}  // namespace qunc
