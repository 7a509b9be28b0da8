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

#ifndef QUNC_LINALG_HPP
#define QUNC_LINALG_HPP

#include <array>

#include <Eigen/Core>

// Closed-form spectra of small real symmetric matrices.
namespace qunc::linalg {

/// Eigenvalues of a symmetric 2x2 matrix, ascending.
std::array<double, 2> sym_eigenvalues(const Eigen::Matrix2d& m);

/// Eigenvalues of a symmetric 3x3 matrix, ascending.
///
/// Uses the trigonometric form of Cardano's method; each value is then
/// polished by one Rayleigh quotient on the eigenvector recovered from
/// the null space of (m - lambda I).
std::array<double, 3> sym_eigenvalues(const Eigen::Matrix3d& m);

/// Unit eigenvector of a symmetric 3x3 matrix for a (known) eigenvalue.
/// For repeated eigenvalues an arbitrary unit vector of the eigenspace is
/// returned. The sign is fixed so that the largest-magnitude component is
/// positive.
Eigen::Vector3d sym_eigenvector(const Eigen::Matrix3d& m, double lambda);

/// Unit eigenvector of a symmetric 2x2 matrix for a known eigenvalue.
Eigen::Vector2d sym_eigenvector(const Eigen::Matrix2d& m, double lambda);

}  // namespace qunc::linalg

#endif  // QUNC_LINALG_HPP
