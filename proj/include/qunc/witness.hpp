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

#ifndef QUNC_WITNESS_HPP
#define QUNC_WITNESS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "qunc/observables.hpp"
#include "qunc/states.hpp"

namespace qunc {

/// M = sum over sites of 1 (x) ... (x) A_site (x) ... (x) 1, for 2 or 3 sites.
class CompositeObservable {
 public:
  explicit CompositeObservable(std::vector<QubitObservable> parts);

  int sites() const { return static_cast<int>(parts_.size()); }
  const std::vector<QubitObservable>& parts() const { return parts_; }
  const QubitObservable& part(int site) const { return parts_[site]; }

 private:
  std::vector<QubitObservable> parts_;
};

struct ProductTerm {
  double weight;
  std::vector<BlochState> sites;
};

/// Either a convex mixture of product states or an explicit 2^n x 2^n
/// density matrix. Site 0 is the leftmost tensor factor.
class MultipartiteState {
 public:
  /// Throws DomainError unless weights are non-negative and sum to 1
  /// (within 1e-10) and every term has the same site count.
  static MultipartiteState product_mixture(std::vector<ProductTerm> terms);
  /// Throws StateFormatError unless rho is 2^n x 2^n (n = 2 or 3),
  /// Hermitian, unit trace and positive semidefinite within 1e-10.
  static MultipartiteState dense(Eigen::MatrixXcd rho);

  int sites() const { return sites_; }
  bool is_dense() const { return rho_.has_value(); }
  const std::vector<ProductTerm>& terms() const { return terms_; }
  /// Explicit density matrix; built on demand for product mixtures.
  Eigen::MatrixXcd to_dense() const;

 private:
  MultipartiteState() = default;

  int sites_ = 0;
  std::vector<ProductTerm> terms_;
  std::optional<Eigen::MatrixXcd> rho_;
};

struct WitnessVerdict {
  double lhs;  // sum of composite variances
  double rhs;  // separability bound
  bool violated;
  double margin;  // rhs - lhs
};

/// Matrix of M on (C^2)^{(x) sites}.
Eigen::MatrixXcd composite_matrix(const CompositeObservable& m);

/// Variance of M. Product mixtures go through per-site means, variances and
/// mixture covariances; dense states through <M^2> - <M>^2.
double composite_variance(const CompositeObservable& m, const MultipartiteState& state);
/// Always the explicit tensor-product route.
double composite_variance_dense(const CompositeObservable& m, const Eigen::MatrixXcd& rho);

/// Sum over sites of the tight variance-sum bound of that site's family
/// (pair bound for 2 measurements, triple bound for 3).
double separability_bound(const std::vector<Family>& site_families);
double separability_bound(const std::vector<CompositeObservable>& ms);

WitnessVerdict evaluate_witness(const std::vector<CompositeObservable>& ms,
                                const MultipartiteState& state);

/// Dirichlet(1, ..., 1) weights over `mixture_size` product terms whose
/// sites are drawn by sample_spectral.
MultipartiteState random_separable(int sites, int mixture_size, Rng& rng);

struct CompositeMinimum {
  double value;
  bool converged;
  Eigen::VectorXcd state;
};

/// Minimum over all states of sum_i Var(M_i), by projected gradient descent
/// over pure states with random restarts. The sum is concave in rho, so
/// pure states suffice.
CompositeMinimum composite_min_bound(const std::vector<CompositeObservable>& ms,
                                     std::uint64_t seed, int restarts = 16);

MultipartiteState singlet_state();
MultipartiteState ghz_state();

}  // namespace qunc

#endif  // QUNC_WITNESS_HPP
