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

#include "qunc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "qunc/errors.hpp"
#include "qunc/parallel.hpp"
#include "qunc/states.hpp"

namespace qunc {

namespace {

constexpr double kPi = std::numbers::pi;
// Relative slack on the quadratic-form tests; keeps exact boundary points
// (pure states, tangency points) inside despite rounding.
constexpr double kFormSlack = 1e-10;
constexpr double kBoxSlack = 1e-9;

double complement(double norm, double x) {
  return std::sqrt(std::max((norm - x) * (norm + x), 0.0));
}

Eigen::VectorXd checked_coords(const RegionSpec& spec, const RegionPoint& p) {
  if (p.coords.size() != spec.size()) {
    throw DimensionMismatch("point has " + std::to_string(p.coords.size()) +
                            " coordinates for a family of " + std::to_string(spec.size()));
  }
  Eigen::VectorXd x = p.coords;
  for (int k = 0; k < spec.size(); ++k) {
    const double n = spec.family()[k].norm();
    if (!(x(k) >= -kBoxSlack * n && x(k) <= n * (1.0 + kBoxSlack))) {
      throw OutOfBox("coordinate " + std::to_string(k) + " = " + std::to_string(x(k)) +
                     " outside [0, " + std::to_string(n) + "]");
    }
    x(k) = std::clamp(x(k), 0.0, n);
  }
  return x;
}

// Precomputed sign-branch test shared by contains_n and volume_mc.
class Membership {
 public:
  explicit Membership(const RegionSpec& spec)
      : n_(spec.size()), r_(spec.rank()), norms_(spec.norms()),
        basis_(spec.decomposition().basis), dependent_(spec.decomposition().dependent),
        kappa_(spec.decomposition().coefficients), big_x_(n_), d_(r_) {
    Family basis_family;
    for (int i : basis_) basis_family.push_back(spec.family()[i]);
    gram_inv_ = gram(basis_family).inverse();
    max_norm_ = norms_.maxCoeff();
  }

  bool operator()(const Eigen::VectorXd& x) {
    for (int k = 0; k < n_; ++k) big_x_(k) = complement(norms_(k), x(k));
    const int combos = 1 << (r_ - 1);
    for (int mask = 0; mask < combos; ++mask) {
      for (int j = 0; j < r_; ++j) {
        const double s = j > 0 && ((mask >> (j - 1)) & 1) ? -1.0 : 1.0;
        d_(j) = s * big_x_(basis_[j]);
      }
      if (d_.dot(gram_inv_ * d_) > 1.0 + kFormSlack) continue;
      if (relations_hold()) return true;
    }
    return false;
  }

 private:
  // Rounding in X = sqrt(|a|^2 - x^2) is amplified where X is near 0;
  // this band bounds that error for one coordinate.
  double band(int k) const {
    const double xk = big_x_(k);
    return std::sqrt(xk * xk + 1e-14 * norms_(k) * norms_(k)) - xk;
  }

  bool relations_hold() const {
    for (std::size_t l = 0; l < dependent_.size(); ++l) {
      double rhs = 0.0;
      double tol = 1e-9 * max_norm_ + band(dependent_[l]);
      for (int j = 0; j < r_; ++j) {
        const double kappa = kappa_(static_cast<Eigen::Index>(l), j);
        rhs += kappa * d_(j);
        tol += std::abs(kappa) * band(basis_[j]);
      }
      if (std::abs(big_x_(dependent_[l]) - std::abs(rhs)) > tol) return false;
    }
    return true;
  }

  int n_;
  int r_;
  Eigen::VectorXd norms_;
  std::vector<int> basis_;
  std::vector<int> dependent_;
  Eigen::MatrixXd kappa_;
  Eigen::MatrixXd gram_inv_;
  double max_norm_ = 0.0;
  Eigen::VectorXd big_x_;
  Eigen::VectorXd d_;
};

}  // namespace

RegionSpec::RegionSpec(Family family)
    : family_(std::move(family)),
      gram_(qunc::gram(family_)),
      decomposition_(decompose(family_)) {}

Eigen::VectorXd RegionSpec::norms() const {
  Eigen::VectorXd n(size());
  for (int k = 0; k < size(); ++k) n(k) = family_[k].norm();
  return n;
}

double angle_phi(double t1, double t2, double t3) {
  return std::cos(t1) - std::cos(t2) * std::cos(t3);
}

double pair_residual(const RegionSpec& spec, const RegionPoint& p) {
  if (spec.size() != 2) throw DimensionMismatch("pair_residual needs two observables");
  if (spec.rank() < 2) throw LinearlyDependentFamily("pair_residual needs independent vectors");
  const Eigen::VectorXd c = checked_coords(spec, p);
  const double a2 = spec.gram()(0, 0);
  const double b2 = spec.gram()(1, 1);
  const double ab = spec.gram()(0, 1);
  const double big_x = complement(std::sqrt(a2), c(0));
  const double big_y = complement(std::sqrt(b2), c(1));
  const double lhs = b2 * c(0) * c(0) + a2 * c(1) * c(1) + 2.0 * std::abs(ab) * big_x * big_y;
  return (lhs - a2 * b2 - ab * ab) / (a2 * b2);
}

bool contains_pair(const RegionSpec& spec, const RegionPoint& p) {
  if (spec.size() != 2) throw DimensionMismatch("contains_pair needs two observables");
  if (spec.rank() < 2) throw LinearlyDependentFamily("contains_pair needs independent vectors");
  const Eigen::VectorXd c = checked_coords(spec, p);
  const double a2 = spec.gram()(0, 0);
  const double b2 = spec.gram()(1, 1);
  const double ab = spec.gram()(0, 1);
  const double x = c(0);
  const double y = c(1);
  const double big_x = complement(std::sqrt(a2), x);
  const double big_y = complement(std::sqrt(b2), y);
  const double lhs = b2 * x * x + a2 * y * y + 2.0 * std::abs(ab) * big_x * big_y;
  const double rhs = a2 * b2 + ab * ab;
  return lhs >= rhs - kFormSlack * a2 * b2;
}

bool contains_triple(const RegionSpec& spec, const RegionPoint& p) {
  if (spec.size() != 3) throw DimensionMismatch("contains_triple needs three observables");
  if (spec.rank() < 3) {
    throw LinearlyDependentFamily("contains_triple needs three independent vectors");
  }
  const Family& f = spec.family();
  const Angles ang = angles(f[0], f[1], f[2]);
  const double eps = 1e-12;
  if (!(ang.alpha <= ang.beta + ang.gamma + eps && ang.beta <= ang.alpha + ang.gamma + eps &&
        ang.gamma <= ang.alpha + ang.beta + eps &&
        ang.alpha + ang.beta + ang.gamma <= 2.0 * kPi + eps)) {
    throw AngleConstraintViolated("pairwise angles violate the triangle conditions");
  }

  // Normalize the vectors and rescale coordinates by 1/|a_k|.
  const Eigen::VectorXd c = checked_coords(spec, p);
  Eigen::Matrix3d cosines;
  cosines << 1.0, std::cos(ang.gamma), std::cos(ang.beta),
             std::cos(ang.gamma), 1.0, std::cos(ang.alpha),
             std::cos(ang.beta), std::cos(ang.alpha), 1.0;
  const Eigen::Matrix3d inv = cosines.inverse();
  Eigen::Vector3d u;
  for (int k = 0; k < 3; ++k) u(k) = complement(1.0, c(k) / f[k].norm());
  for (double sb : {1.0, -1.0}) {
    for (double sc : {1.0, -1.0}) {
      const Eigen::Vector3d v(u(0), sb * u(1), sc * u(2));
      if (v.dot(inv * v) <= 1.0 + kFormSlack) return true;
    }
  }
  return false;
}

bool contains_n(const RegionSpec& spec, const RegionPoint& p) {
  const Eigen::VectorXd c = checked_coords(spec, p);
  Membership test(spec);
  return test(c);
}

std::vector<RegionPoint> boundary_pair(const RegionSpec& spec, int samples) {
  if (spec.size() != 2) throw DimensionMismatch("boundary_pair needs two observables");
  if (spec.rank() < 2) throw LinearlyDependentFamily("boundary_pair needs independent vectors");
  if (samples < 2) throw DomainError("boundary_pair needs at least 2 samples");

  const double na = std::sqrt(spec.gram()(0, 0));
  const double nb = std::sqrt(spec.gram()(1, 1));
  // Flipping b leaves every uncertainty unchanged, so work at the acute angle.
  const double theta = std::acos(std::clamp(std::abs(spec.gram()(0, 1)) / (na * nb), 0.0, 1.0));
  const auto at = [&](double t) {
    return RegionPoint{Eigen::Vector2d(na * std::abs(std::sin(t)),
                                       nb * std::abs(std::sin(t - theta)))};
  };

  // Pure states in the plane of a and b at angle t from a trace the curve
  // for t in [theta - pi/2, pi/2]; [0, theta] is the lower branch.
  const double outer = kPi / 2.0 - theta;
  int n_lower = static_cast<int>(std::lround(samples * theta / (kPi - theta)));
  n_lower = std::clamp(n_lower, 2, samples);
  const int n_a = (samples - n_lower) / 2;
  const int n_b = samples - n_lower - n_a;

  std::vector<RegionPoint> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < n_a; ++i) out.push_back(at(theta - kPi / 2.0 + outer * i / n_a));
  for (int i = 0; i < n_lower; ++i) out.push_back(at(theta * i / (n_lower - 1)));
  for (int i = 1; i <= n_b; ++i) out.push_back(at(theta + outer * i / n_b));
  // Land the lower-branch endpoints exactly on the axes.
  out[n_a].coords(0) = 0.0;
  out[n_a + n_lower - 1].coords(1) = 0.0;
  return out;
}

double area_pair(double theta) {
  if (!(theta >= 0.0 && theta <= kPi / 2.0)) {
    throw DomainError("area_pair needs theta in [0, pi/2]; fold with theta -> pi - theta");
  }
  return 0.5 * (kPi - 3.0 * theta) * std::sin(theta) - std::cos(theta) + 1.0;
}

AreaMaximum max_area(double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0;
  double hi = kPi / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = area_pair(x1);
  double f2 = area_pair(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = area_pair(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = area_pair(x1);
    }
  }
  const double theta = 0.5 * (lo + hi);
  return {theta, area_pair(theta)};
}

VolumeEstimate volume_mc(const RegionSpec& spec, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("volume_mc needs at least one sample");
  constexpr int kChunks = 16;
  const Eigen::VectorXd norms = spec.norms();
  const auto hits = map_chunks<std::int64_t>(kChunks, [&](int chunk) {
    Rng rng(worker_seed(seed, static_cast<std::uint64_t>(chunk)));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Membership test(spec);
    Eigen::VectorXd x(spec.size());
    std::int64_t count = 0;
    for (std::int64_t i = chunk_size(samples, kChunks, chunk); i > 0; --i) {
      for (int k = 0; k < spec.size(); ++k) x(k) = norms(k) * unif(rng);
      if (test(x)) ++count;
    }
    return count;
  });
  std::int64_t total = 0;
  for (auto h : hits) total += h;
  const double box = norms.prod();
  const double p = static_cast<double>(total) / static_cast<double>(samples);
  return {box * p, box * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

}  // namespace qunc
