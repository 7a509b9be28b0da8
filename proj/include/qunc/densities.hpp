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

#ifndef QUNC_DENSITIES_HPP
#define QUNC_DENSITIES_HPP

#include <vector>

#include <Eigen/Core>

#include "qunc/observables.hpp"

namespace qunc {

enum class DensityKind { continuous, constrained };
enum class Quantity { mean, uncertainty };

/// coefficients . (point - offsets) = 0, over the full family point.
struct AffineConstraint {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd offsets;

  double residual(const Eigen::VectorXd& point) const {
    return coefficients.dot(point - offsets);
  }
};

/// eps_t X_t = sum_j kappa_j eps_j X_j for some signs eps, where
/// X_k = sqrt(|a_k|^2 - x_k^2) and j runs over the basis.
struct RootConstraint {
  int target = 0;
  std::vector<int> basis;
  Eigen::VectorXd kappa;
};

/// Joint density of mean values or uncertainties of a family under the
/// induced random-state measure.
///
/// The continuous part lives on the coordinates of the basis sub-family
/// (all of the family when it is linearly independent). Dependent members
/// contribute delta factors, kept symbolically as constraints.
class DensityDescriptor {
 public:
  DensityDescriptor(Quantity quantity, Family family);

  DensityKind kind() const {
    return dependent_.empty() ? DensityKind::continuous : DensityKind::constrained;
  }
  Quantity quantity() const { return quantity_; }
  int dim() const { return static_cast<int>(family_.size()); }
  int rank() const { return static_cast<int>(basis_.size()); }
  const Family& family() const { return family_; }
  const std::vector<int>& basis() const { return basis_; }
  const std::vector<int>& dependent() const { return dependent_; }
  const Eigen::MatrixXd& kappa() const { return kappa_; }

  /// Closure of the support; for uncertainties the axis boxes are
  /// half-open, [0, |a_k|), because the density diverges on the far face.
  bool in_support(const Eigen::VectorXd& basis_point) const;
  /// Continuous part at a point given in basis coordinates.
  double operator()(const Eigen::VectorXd& basis_point) const;
  double operator()(double x) const;

  const std::vector<AffineConstraint>& affine_constraints() const { return affine_; }
  const std::vector<RootConstraint>& root_constraints() const { return roots_; }

  /// Largest violation of the delta factors at a full-family point; 0 for
  /// continuous descriptors.
  double constraint_residual(const Eigen::VectorXd& point) const;
  /// Coordinates of a full-family point on the basis.
  Eigen::VectorXd project(const Eigen::VectorXd& point) const;

  /// Mean-value density of the basis at displacement d from the offsets.
  double mean_kernel(const Eigen::VectorXd& d) const;
  /// d^T T^{-1} d for the basis Gram matrix T.
  double omega_sq(const Eigen::VectorXd& d) const;
  const Eigen::MatrixXd& basis_gram() const { return gram_; }
  const Eigen::VectorXd& basis_offsets() const { return offsets_; }
  const Eigen::VectorXd& basis_norms() const { return norms_; }

 private:
  Quantity quantity_;
  Family family_;
  std::vector<int> basis_;
  std::vector<int> dependent_;
  Eigen::MatrixXd kappa_;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd gram_inv_;
  double sqrt_det_ = 0.0;
  Eigen::VectorXd offsets_;
  Eigen::VectorXd norms_;
  std::vector<AffineConstraint> affine_;
  std::vector<RootConstraint> roots_;
};

DensityDescriptor pdf_mean(const QubitObservable& a);
DensityDescriptor pdf_uncertainty(const QubitObservable& a);
DensityDescriptor pdf_mean_pair(const QubitObservable& a, const QubitObservable& b);
/// Throws LinearlyDependentFamily unless rank 2.
DensityDescriptor pdf_uncertainty_pair(const QubitObservable& a,
                                       const QubitObservable& b);
DensityDescriptor pdf_mean_triple(const QubitObservable& a, const QubitObservable& b,
                                  const QubitObservable& c);
/// Throws LinearlyDependentFamily unless rank 3.
DensityDescriptor pdf_uncertainty_triple(const QubitObservable& a,
                                         const QubitObservable& b,
                                         const QubitObservable& c);
DensityDescriptor pdf_mean_n(const Family& family);
DensityDescriptor pdf_uncertainty_n(const Family& family);

/// Integral of the continuous part over its support.
double normalization(const DensityDescriptor& density);

/// Integral of the continuous part over the basis-coordinate box [lo, hi].
double box_mass(const DensityDescriptor& density, const Eigen::VectorXd& lo,
                const Eigen::VectorXd& hi);

/// Quadrature value of int_0^inf (sin q - q cos q) / q^2 J_0(lambda q) dq,
/// which should equal sqrt(1 - lambda^2) below 1 and vanish above.
double bessel_identity_check(double lambda);

}  // namespace qunc

#endif  // QUNC_DENSITIES_HPP
