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

#ifndef QUNC_STATES_HPP
#define QUNC_STATES_HPP

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "qunc/observables.hpp"

namespace qunc {

using Rng = std::mt19937_64;

/// Seed of the i-th independent worker stream.
inline std::uint64_t worker_seed(std::uint64_t seed, std::uint64_t worker) {
  return seed ^ worker;
}

/// Qubit density matrix rho = (1 + r . sigma) / 2.
class BlochState {
 public:
  BlochState() : r_(Vec3::Zero()) {}
  /// Throws DomainError if |r| > 1 + 1e-12.
  explicit BlochState(const Vec3& r);

  const Vec3& r() const { return r_; }
  bool pure(double tol = 1e-12) const { return std::abs(r_.norm() - 1.0) <= tol; }
  Eigen::Matrix2cd density_matrix() const;

 private:
  Vec3 r_;
};

struct SpectralSample {
  double lambda1;  // smaller eigenvalue, in [0, 1/2]
};

double mean(const QubitObservable& obs, const BlochState& state);
double variance(const QubitObservable& obs, const BlochState& state);
/// sqrt(variance), clamped at 0.
double deviation(const QubitObservable& obs, const BlochState& state);

/// Inverse CDF of the smaller eigenvalue: lambda1 = (1 - (1-u)^{1/3}) / 2.
SpectralSample spectral_from_uniform(double u);

/// Bloch state with spectrum (lambda1, 1 - lambda1) and given unit axis.
BlochState from_spectral(SpectralSample s, const Vec3& direction);

Vec3 random_unit_vector(Rng& rng);

/// Haar-random pure state on C^2 (x) C^2, traced over the second factor.
BlochState sample_purified(Rng& rng);

/// Eigenvalue draw by inverse CDF, times a uniformly random eigenbasis.
BlochState sample_spectral(Rng& rng);

/// Average of exp(-i Tr(A rho)) over the induced measure.
std::complex<double> char_fn(const QubitObservable& obs);

}  // namespace qunc

#endif  // QUNC_STATES_HPP
