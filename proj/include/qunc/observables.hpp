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

#ifndef QUNC_OBSERVABLES_HPP
#define QUNC_OBSERVABLES_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qunc {

using Vec3 = Eigen::Vector3d;

/// Qubit observable A = a0 * 1 + a . sigma.
///
/// A zero vector is representable (identity multiples appear when composing
/// multipartite observables) but every analytic routine rejects it.
class QubitObservable {
 public:
  QubitObservable() : offset_(0.0), vec_(Vec3::Zero()) {}
  QubitObservable(double offset, const Vec3& vec) : offset_(offset), vec_(vec) {}
  QubitObservable(double a0, double a1, double a2, double a3)
      : offset_(a0), vec_(a1, a2, a3) {}

  double offset() const { return offset_; }
  const Vec3& vec() const { return vec_; }
  double norm() const { return vec_.norm(); }
  bool degenerate() const { return vec_.squaredNorm() == 0.0; }

  /// Pauli matrix sigma_{axis}, axis in {1, 2, 3}.
  static QubitObservable pauli(int axis);

 private:
  double offset_;
  Vec3 vec_;
};

using Family = std::vector<QubitObservable>;

/// (a0 - |a|, a0 + |a|).
std::pair<double, double> eigenvalues(const QubitObservable& obs);

/// Matrix of pairwise inner products of the observable vectors.
class GramMatrix {
 public:
  /// `columns` stacks the observable vectors as columns (the 3 x k matrix M).
  explicit GramMatrix(Eigen::Matrix3Xd columns);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(int i, int j) const { return entries_(i, j); }

  double trace() const { return entries_.trace(); }
  double determinant() const;
  // The nonzero spectrum of M^T M coincides with that of the 3x3 frame
  // M M^T, so the extremes never need a k x k eigensolver.
  double lambda_min() const;
  double lambda_max() const;
  Eigen::MatrixXd inverse() const;
  const Eigen::Matrix3d& frame() const { return frame_; }

 private:
  Eigen::Matrix3Xd columns_;
  Eigen::MatrixXd entries_;
  Eigen::Matrix3d frame_;
};

/// Throws DegenerateObservable if any |a_i| = 0.
GramMatrix gram(const Family& family);

/// The 3 x k matrix of observable vectors; accepts zero vectors.
Eigen::Matrix3Xd stack_vectors(const Family& family);

struct FamilyDecomposition {
  int rank = 0;
  // Indices into the family, ascending.
  std::vector<int> basis;
  // Indices not in the basis, ascending; row l of `coefficients` expresses
  // a_{dependent[l]} in terms of the basis vectors.
  std::vector<int> dependent;
  Eigen::MatrixXd coefficients;
  double reconstruction_error = 0.0;
};

/// Rank and basis by singular values above tol * sigma_max; the basis is
/// chosen greedily in family order so earlier observables are preferred.
FamilyDecomposition decompose(const Family& family, double tol = 1e-9);

struct Angles {
  double alpha;  // between b and c
  double beta;   // between a and c
  double gamma;  // between a and b
};

Angles angles(const QubitObservable& a, const QubitObservable& b,
              const QubitObservable& c);

/// Angle in [0, pi] between two nonzero vectors.
double angle_between(const Vec3& u, const Vec3& v);

}  // namespace qunc

#endif  // QUNC_OBSERVABLES_HPP
