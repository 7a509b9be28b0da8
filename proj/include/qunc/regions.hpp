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

#ifndef QUNC_REGIONS_HPP
#define QUNC_REGIONS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qunc/observables.hpp"

namespace qunc {

/// Ordered observable family together with its Gram matrix and rank data.
class RegionSpec {
 public:
  /// Throws DegenerateObservable if any member has |a| = 0.
  explicit RegionSpec(Family family);

  const Family& family() const { return family_; }
  const GramMatrix& gram() const { return gram_; }
  const FamilyDecomposition& decomposition() const { return decomposition_; }
  int size() const { return static_cast<int>(family_.size()); }
  int rank() const { return decomposition_.rank; }
  /// Per-axis box edges |a_k|.
  Eigen::VectorXd norms() const;

 private:
  Family family_;
  GramMatrix gram_;
  FamilyDecomposition decomposition_;
};

/// Candidate uncertainty tuple (x_1, ..., x_k).
struct RegionPoint {
  Eigen::VectorXd coords;
};

/// phi(t1, t2, t3) = cos t1 - cos t2 cos t3.
double angle_phi(double t1, double t2, double t3);

/// Two-observable region. Throws LinearlyDependentFamily unless rank 2, and
/// OutOfBox if a coordinate leaves [0, |a_k|] by more than 1e-9 |a_k|.
bool contains_pair(const RegionSpec& spec, const RegionPoint& p);

/// (lhs - rhs) / (|a|^2 |b|^2) of the two-observable inequality; zero on
/// the boundary curve, non-negative inside.
double pair_residual(const RegionSpec& spec, const RegionPoint& p);

/// Three-observable region as a union over sign branches of a quadratic
/// form in normalized coordinates. Throws LinearlyDependentFamily unless
/// rank 3, AngleConstraintViolated if the pairwise angles cannot belong to
/// three independent directions.
bool contains_triple(const RegionSpec& spec, const RegionPoint& p);

/// General family: some sign assignment satisfies the basis quadratic form
/// and every sign-resolved linear relation of the dependent members.
bool contains_n(const RegionSpec& spec, const RegionPoint& p);

/// Points on the curve where the two-observable inequality is an equality,
/// ordered along the curve: the outer arc meeting the y face, the lower
/// branch from (0, |b| sin t) to (|a| sin t, 0), and the mirrored outer arc
/// meeting the x face. Both lower-branch endpoints are always included.
std::vector<RegionPoint> boundary_pair(const RegionSpec& spec, int samples);

/// Area of the unit-length two-observable region at angle theta in
/// [0, pi/2]. Throws DomainError outside that range.
double area_pair(double theta);

struct AreaMaximum {
  double theta;
  double area;
};

/// Golden-section maximization of area_pair on [0, pi/2].
AreaMaximum max_area(double tol = 1e-8);

struct VolumeEstimate {
  double estimate;
  double std_error;
};

/// Monte Carlo volume of the region inside its axis box, sampling
/// `samples` uniform box points split into fixed chunks with one RNG stream
/// per chunk.
VolumeEstimate volume_mc(const RegionSpec& spec, std::int64_t samples, std::uint64_t seed);

}  // namespace qunc

#endif  // QUNC_REGIONS_HPP
