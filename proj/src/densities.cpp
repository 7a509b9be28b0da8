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

#include "qunc/densities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Dense>
#include <gsl/gsl_sf_bessel.h>

#include "qunc/errors.hpp"
#include "qunc/quadrature.hpp"

namespace qunc {

namespace {

constexpr double kPi = std::numbers::pi;

// Complement X_k = sqrt(|a_k|^2 - x_k^2) of an uncertainty coordinate.
double complement(double norm, double x) {
  const double scale = norm * norm;
  const double v = (norm - x) * (norm + x);
  return v > -1e-12 * scale ? std::sqrt(std::max(v, 0.0)) : 0.0;
}

// Calls f(signs) for all sign vectors with signs[0] = +1.
void for_each_sign(int n, const std::function<void(const Eigen::VectorXd&)>& f) {
  Eigen::VectorXd s = Eigen::VectorXd::Ones(n);
  const int combos = n > 0 ? 1 << (n - 1) : 1;
  for (int mask = 0; mask < combos; ++mask) {
    for (int j = 1; j < n; ++j) s(j) = (mask >> (j - 1)) & 1 ? -1.0 : 1.0;
    f(s);
  }
}

}  // namespace

DensityDescriptor::DensityDescriptor(Quantity quantity, Family family)
    : quantity_(quantity), family_(std::move(family)) {
  if (family_.empty()) throw DomainError("density of an empty family");
  (void)gram(family_);  // rejects identity multiples
  const FamilyDecomposition dec = decompose(family_);
  basis_ = dec.basis;
  dependent_ = dec.dependent;
  kappa_ = dec.coefficients;

  Family basis_family;
  for (int i : basis_) basis_family.push_back(family_[i]);
  const GramMatrix t = gram(basis_family);
  gram_ = t.entries();
  gram_inv_ = t.inverse();
  sqrt_det_ = std::sqrt(t.determinant());

  const int r = rank();
  offsets_.resize(r);
  norms_.resize(r);
  for (int j = 0; j < r; ++j) {
    offsets_(j) = basis_family[j].offset();
    norms_(j) = basis_family[j].norm();
  }

  Eigen::VectorXd all_offsets(dim());
  for (int i = 0; i < dim(); ++i) all_offsets(i) = family_[i].offset();
  for (std::size_t l = 0; l < dependent_.size(); ++l) {
    const Eigen::VectorXd k = kappa_.row(static_cast<Eigen::Index>(l)).transpose();
    if (quantity_ == Quantity::mean) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(dim());
      c(dependent_[l]) = 1.0;
      for (int j = 0; j < r; ++j) c(basis_[j]) -= k(j);
      affine_.push_back({c, all_offsets});
    } else {
      roots_.push_back({dependent_[l], basis_, k});
    }
  }
}

double DensityDescriptor::omega_sq(const Eigen::VectorXd& d) const {
  return d.dot(gram_inv_ * d);
}

double DensityDescriptor::mean_kernel(const Eigen::VectorXd& d) const {
  const double w = omega_sq(d);
  switch (rank()) {
    case 1:
      return w <= 1.0 ? 0.75 * (1.0 - w) / sqrt_det_ : 0.0;
    case 2:
      return w <= 1.0 ? 1.5 / kPi * std::sqrt(1.0 - w) / sqrt_det_ : 0.0;
    default: {
      // 3 (1 + sign(1 - w)) / (8 pi sqrt(det T)); half value on the shell.
      const double sgn = w < 1.0 ? 1.0 : (w == 1.0 ? 0.0 : -1.0);
      return 3.0 * (1.0 + sgn) / (8.0 * kPi * sqrt_det_);
    }
  }
}

bool DensityDescriptor::in_support(const Eigen::VectorXd& p) const {
  if (p.size() != rank()) throw DimensionMismatch("point size differs from density rank");
  if (quantity_ == Quantity::mean) return omega_sq(p - offsets_) <= 1.0;

  Eigen::VectorXd big_x(rank());
  for (int j = 0; j < rank(); ++j) {
    if (!(p(j) >= 0.0 && p(j) < norms_(j))) return false;
    big_x(j) = complement(norms_(j), p(j));
  }
  bool inside = false;
  for_each_sign(rank(), [&](const Eigen::VectorXd& s) {
    inside = inside || omega_sq(s.cwiseProduct(big_x)) <= 1.0;
  });
  return inside;
}

double DensityDescriptor::operator()(const Eigen::VectorXd& p) const {
  if (p.size() != rank()) throw DimensionMismatch("point size differs from density rank");
  if (quantity_ == Quantity::mean) return mean_kernel(p - offsets_);

  Eigen::VectorXd big_x(rank());
  double jacobian = 2.0;
  for (int j = 0; j < rank(); ++j) {
    if (!(p(j) >= 0.0 && p(j) < norms_(j))) return 0.0;
    big_x(j) = complement(norms_(j), p(j));
    if (big_x(j) == 0.0) return 0.0;  // rounding at the far face
    jacobian *= p(j) / big_x(j);
  }
  double total = 0.0;
  for_each_sign(rank(), [&](const Eigen::VectorXd& s) {
    total += mean_kernel(s.cwiseProduct(big_x));
  });
  return jacobian * total;
}

double DensityDescriptor::operator()(double x) const {
  return (*this)(Eigen::VectorXd::Constant(1, x));
}

Eigen::VectorXd DensityDescriptor::project(const Eigen::VectorXd& point) const {
  if (point.size() != dim()) throw DimensionMismatch("point size differs from family size");
  Eigen::VectorXd out(rank());
  for (int j = 0; j < rank(); ++j) out(j) = point(basis_[j]);
  return out;
}

double DensityDescriptor::constraint_residual(const Eigen::VectorXd& point) const {
  if (point.size() != dim()) throw DimensionMismatch("point size differs from family size");
  if (quantity_ == Quantity::mean) {
    double worst = 0.0;
    for (const auto& c : affine_) worst = std::max(worst, std::abs(c.residual(point)));
    return worst;
  }
  if (roots_.empty()) return 0.0;
  Eigen::VectorXd big_x(dim());
  for (int i = 0; i < dim(); ++i) big_x(i) = complement(family_[i].norm(), point(i));
  double best = INFINITY;
  for_each_sign(rank(), [&](const Eigen::VectorXd& s) {
    double worst = 0.0;
    for (const auto& c : roots_) {
      double rhs = 0.0;
      for (std::size_t j = 0; j < c.basis.size(); ++j) {
        rhs += c.kappa(static_cast<Eigen::Index>(j)) * s(static_cast<Eigen::Index>(j)) *
               big_x(c.basis[j]);
      }
      // The target's own sign is free, so only |rhs| matters.
      worst = std::max(worst, std::abs(big_x(c.target) - std::abs(rhs)));
    }
    best = std::min(best, worst);
  });
  return best;
}

DensityDescriptor pdf_mean(const QubitObservable& a) {
  return DensityDescriptor(Quantity::mean, {a});
}

DensityDescriptor pdf_uncertainty(const QubitObservable& a) {
  return DensityDescriptor(Quantity::uncertainty, {a});
}

DensityDescriptor pdf_mean_pair(const QubitObservable& a, const QubitObservable& b) {
  return DensityDescriptor(Quantity::mean, {a, b});
}

DensityDescriptor pdf_uncertainty_pair(const QubitObservable& a,
                                       const QubitObservable& b) {
  DensityDescriptor d(Quantity::uncertainty, {a, b});
  if (d.rank() < 2) throw LinearlyDependentFamily("uncertainty pair needs independent vectors");
  return d;
}

DensityDescriptor pdf_mean_triple(const QubitObservable& a, const QubitObservable& b,
                                  const QubitObservable& c) {
  return DensityDescriptor(Quantity::mean, {a, b, c});
}

DensityDescriptor pdf_uncertainty_triple(const QubitObservable& a,
                                         const QubitObservable& b,
                                         const QubitObservable& c) {
  DensityDescriptor d(Quantity::uncertainty, {a, b, c});
  if (d.rank() < 3) {
    throw LinearlyDependentFamily("uncertainty triple needs three independent vectors");
  }
  return d;
}

DensityDescriptor pdf_mean_n(const Family& family) {
  return DensityDescriptor(Quantity::mean, family);
}

DensityDescriptor pdf_uncertainty_n(const Family& family) {
  return DensityDescriptor(Quantity::uncertainty, family);
}

// ---------------------------------------------------------------------------
// Nested quadrature over the ellipsoid d^T T^{-1} d <= 1.
//
// The projection of that ellipsoid onto the leading k+1 coordinates is the
// ellipsoid of the leading (k+1)x(k+1) block of T, so at every nesting level
// the admissible range of the current coordinate is an explicit interval.

namespace {

constexpr quad::Tolerance kNestedTol{1e-11, 1e-9};

class EllipsoidIntegrator {
 public:
  explicit EllipsoidIntegrator(const DensityDescriptor& d) : d_(d), r_(d.rank()) {
    for (int k = 0; k < r_; ++k) {
      leading_inv_.push_back(d.basis_gram().topLeftCorner(k + 1, k + 1).inverse());
    }
  }

  // Interval of t = d_k with the prefix d_0..d_{k-1} fixed inside the
  // projected ellipsoid.
  bool slice(int k, const Eigen::VectorXd& d, double& lo, double& hi) const {
    const Eigen::MatrixXd& p = leading_inv_[k];
    double q1 = 0.0;
    double q0 = 0.0;
    for (int i = 0; i < k; ++i) {
      q1 += p(k, i) * d(i);
      for (int j = 0; j < k; ++j) q0 += d(i) * p(i, j) * d(j);
    }
    const double q2 = p(k, k);
    const double disc = q1 * q1 - q2 * (q0 - 1.0);
    if (disc < 0.0) return false;
    const double s = std::sqrt(disc);
    lo = (-q1 - s) / q2;
    hi = (-q1 + s) / q2;
    return true;
  }

  double mean(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(r_);
    return mean_level(0, d, lo, hi);
  }

  double uncertainty(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    Eigen::VectorXd phi = Eigen::VectorXd::Zero(r_);
    return unc_level(0, phi, lo, hi);
  }

 private:
  double mean_level(int k, Eigen::VectorXd& d, const Eigen::VectorXd& lo,
                    const Eigen::VectorXd& hi) {
    double a = 0.0;
    double b = 0.0;
    if (!slice(k, d, a, b)) return 0.0;
    a = std::max(a, lo(k));
    b = std::min(b, hi(k));
    if (!(b > a)) return 0.0;
    if (k == 2) {
      // Constant kernel inside the ellipsoid: value times chord length.
      d(k) = 0.5 * (a + b);
      return d_.mean_kernel(d) * (b - a);
    }
    const quad::Integrand f = [&, k](double t) {
      d(k) = t;
      return k + 1 == r_ ? d_.mean_kernel(d) : mean_level(k + 1, d, lo, hi);
    };
    std::vector<double> breaks;
    if (k == 1 && r_ == 3) {
      for (double c : {lo(2), hi(2)}) {
        for (double d1 : chord_end_crossings(d(0), c)) breaks.push_back(d1);
      }
    }
    return quad::integrate(f, a, b, kNestedTol, breaks);
  }

  // In angle coordinates x_k = |a_k| sin(phi_k) the 1/X_k factors cancel
  // against the Jacobian, leaving a bounded integrand.
  double unc_integrand(const Eigen::VectorXd& phi) const {
    const Eigen::VectorXd& n = d_.basis_norms();
    Eigen::VectorXd big_x(r_);
    double weight = 2.0;
    for (int j = 0; j < r_; ++j) {
      weight *= n(j) * std::sin(phi(j));
      big_x(j) = n(j) * std::cos(phi(j));
    }
    double total = 0.0;
    for_each_sign(r_, [&](const Eigen::VectorXd& s) {
      total += d_.mean_kernel(s.cwiseProduct(big_x));
    });
    return weight * total;
  }

  double unc_level(int k, Eigen::VectorXd& phi, const Eigen::VectorXd& lo,
                   const Eigen::VectorXd& hi) {
    if (k == 2) return innermost_rank3(phi, lo(k), hi(k));
    const Eigen::VectorXd& n = d_.basis_norms();
    std::vector<double> breaks;
    Eigen::VectorXd d(r_);
    for_each_sign(k + 1, [&](const Eigen::VectorXd& s) {
      for (int j = 0; j < k; ++j) d(j) = s(j) * n(j) * std::cos(phi(j));
      double t0 = 0.0;
      double t1 = 0.0;
      if (!slice(k, d, t0, t1)) return;
      for (double t : {t0, t1}) {
        const double c = std::abs(t) / n(k);
        if (c < 1.0) breaks.push_back(std::acos(c));
      }
    });
    if (k == 1 && r_ == 3) add_face_breaks(phi(0), lo(2), hi(2), breaks);
    const quad::Integrand f = [&, k](double t) {
      phi(k) = t;
      return k + 1 == r_ ? unc_integrand(phi) : unc_level(k + 1, phi, lo, hi);
    };
    return quad::integrate(f, lo(k), hi(k), kNestedTol, breaks);
  }

  // Kinks of the rank-3 inner integral in phi_1: the chord of the ellipsoid
  // at fixed (d_0, d_1) ends exactly on a face X_2 = n_2 cos(phi_2 bound).
  void add_face_breaks(double phi0, double phi2_lo, double phi2_hi,
                       std::vector<double>& breaks) const {
    const Eigen::VectorXd& n = d_.basis_norms();
    const double d0 = n(0) * std::cos(phi0);
    for (double face : {n(2) * std::cos(phi2_lo), n(2) * std::cos(phi2_hi)}) {
      for (double c : {face, -face}) {
        for (double d1 : chord_end_crossings(d0, c)) {
          const double ratio = std::abs(d1) / n(1);
          if (ratio < 1.0) breaks.push_back(std::acos(ratio));
        }
      }
    }
  }

  // Values of d_1 for which the rank-3 ellipsoid passes through (d0, d1, c).
  std::vector<double> chord_end_crossings(double d0, double c) const {
    const Eigen::MatrixXd& p = leading_inv_[2];
    const double qa = p(1, 1);
    const double qb = p(0, 1) * d0 + p(1, 2) * c;
    const double qc = p(0, 0) * d0 * d0 + 2.0 * p(0, 2) * d0 * c + p(2, 2) * c * c - 1.0;
    const double disc = qb * qb - qa * qc;
    if (disc < 0.0) return {};
    return {(-qb - std::sqrt(disc)) / qa, (-qb + std::sqrt(disc)) / qa};
  }

  // The rank-3 mean density is constant inside the ellipsoid, and
  // x_2 dphi_2 = -dX_2, so the last integral is that constant times the
  // length of the admissible X_2 interval for each sign branch.
  double innermost_rank3(const Eigen::VectorXd& phi, double phi_lo, double phi_hi) const {
    const Eigen::VectorXd& n = d_.basis_norms();
    const double x_lo = n(2) * std::cos(phi_hi);
    const double x_hi = n(2) * std::cos(phi_lo);
    const double weight = 2.0 * n(0) * std::sin(phi(0)) * n(1) * std::sin(phi(1));
    Eigen::VectorXd probe = Eigen::VectorXd::Zero(3);
    const double level = d_.mean_kernel(probe);  // interior value
    double length = 0.0;
    Eigen::VectorXd d(3);
    for_each_sign(3, [&](const Eigen::VectorXd& s) {
      d(0) = n(0) * std::cos(phi(0));
      d(1) = s(1) * n(1) * std::cos(phi(1));
      double t0 = 0.0;
      double t1 = 0.0;
      if (!slice(2, d, t0, t1)) return;
      // X_2 = s_2 t, with s_2 = s(2).
      const double a = std::min(s(2) * t0, s(2) * t1);
      const double b = std::max(s(2) * t0, s(2) * t1);
      length += std::max(0.0, std::min(b, x_hi) - std::max(a, x_lo));
    });
    return weight * level * length;
  }

  const DensityDescriptor& d_;
  int r_;
  std::vector<Eigen::MatrixXd> leading_inv_;
};

}  // namespace

double box_mass(const DensityDescriptor& density, const Eigen::VectorXd& lo,
                const Eigen::VectorXd& hi) {
  const int r = density.rank();
  if (lo.size() != r || hi.size() != r) throw DimensionMismatch("box size differs from rank");
  EllipsoidIntegrator integrator(density);
  if (density.quantity() == Quantity::mean) {
    return integrator.mean(lo - density.basis_offsets(), hi - density.basis_offsets());
  }
  Eigen::VectorXd phi_lo(r);
  Eigen::VectorXd phi_hi(r);
  for (int j = 0; j < r; ++j) {
    const double n = density.basis_norms()(j);
    phi_lo(j) = std::asin(std::clamp(lo(j) / n, 0.0, 1.0));
    phi_hi(j) = std::asin(std::clamp(hi(j) / n, 0.0, 1.0));
  }
  return integrator.uncertainty(phi_lo, phi_hi);
}

double normalization(const DensityDescriptor& density) {
  const Eigen::VectorXd& n = density.basis_norms();
  if (density.quantity() == Quantity::mean) {
    return box_mass(density, density.basis_offsets() - n, density.basis_offsets() + n);
  }
  return box_mass(density, Eigen::VectorXd::Zero(n.size()), n);
}

// ---------------------------------------------------------------------------

namespace {

// int_Q^inf cos(w q + phase) q^{-3/2} dq for w >= 0, via one integration by
// parts and a Fresnel-type remainder.
double slow_tail(double w, double phase, double q_max) {
  const double boundary = 2.0 * std::cos(w * q_max + phase) / std::sqrt(q_max);
  if (w == 0.0) return boundary;
  const double v_max = std::sqrt(w * q_max);
  const int panels = 64 + static_cast<int>(4.0 * v_max * v_max);
  const quad::Integrand g = [phase](double v) { return std::sin(v * v + phase); };
  double partial = 0.0;
  for (int i = 0; i < panels; ++i) {
    partial += quad::gauss_legendre(g, v_max * i / panels, v_max * (i + 1) / panels, 10);
  }
  const double complete = std::sqrt(kPi / 2.0) * (std::sin(phase) + std::cos(phase));
  return boundary - 2.0 * std::sqrt(w) * (complete - 2.0 * partial);
}

}  // namespace

double bessel_identity_check(double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("bessel_identity_check needs lambda >= 0");
  constexpr double q_max = 4e4;
  const quad::Integrand f = [lambda](double q) {
    return gsl_sf_bessel_j1(q) * gsl_sf_bessel_J0(lambda * q);
  };
  const double width = kPi / (1.0 + lambda);
  const int panels = static_cast<int>(std::ceil(q_max / width));
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    sum += quad::gauss_legendre(f, i * width, std::min((i + 1) * width, q_max), 10);
  }

  // Beyond q_max the integrand is -sqrt(2/(pi lambda)) q^{-3/2} cos(q)
  // cos(lambda q - pi/4) to leading order. The (1 + lambda) component is
  // negligible; the (1 - lambda) beat decays slowly near lambda = 1.
  const double w = 1.0 - lambda;
  if (lambda * q_max > 100.0 && std::abs(w) * q_max < 200.0) {
    const double phase = w >= 0.0 ? kPi / 4.0 : -kPi / 4.0;
    sum -= 0.5 * std::sqrt(2.0 / (kPi * lambda)) * slow_tail(std::abs(w), phase, q_max);
  }
  return sum;
}

}  // namespace qunc
