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

#include "qunc/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qunc/errors.hpp"

namespace qunc {

BlochState::BlochState(const Vec3& r) : r_(r) {
  if (!(r.norm() <= 1.0 + 1e-12)) {
    throw DomainError("Bloch vector has norm " + std::to_string(r.norm()) + " > 1");
  }
}

Eigen::Matrix2cd BlochState::density_matrix() const {
  using C = std::complex<double>;
  Eigen::Matrix2cd rho;
  rho << C(1.0 + r_(2), 0.0), C(r_(0), -r_(1)),
         C(r_(0), r_(1)), C(1.0 - r_(2), 0.0);
  return 0.5 * rho;
}

double mean(const QubitObservable& obs, const BlochState& state) {
  return obs.offset() + obs.vec().dot(state.r());
}

double variance(const QubitObservable& obs, const BlochState& state) {
  const double p = obs.vec().dot(state.r());
  return obs.vec().squaredNorm() - p * p;
}

double deviation(const QubitObservable& obs, const BlochState& state) {
  return std::sqrt(std::max(variance(obs, state), 0.0));
}

SpectralSample spectral_from_uniform(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("uniform variate outside [0, 1]");
  return {0.5 * (1.0 - std::cbrt(1.0 - u))};
}

BlochState from_spectral(SpectralSample s, const Vec3& direction) {
  const double radius = std::clamp(1.0 - 2.0 * s.lambda1, 0.0, 1.0);
  return BlochState(radius * direction.normalized());
}

Vec3 random_unit_vector(Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double z = 2.0 * unif(rng) - 1.0;
  const double phi = 2.0 * std::numbers::pi * unif(rng);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {s * std::cos(phi), s * std::sin(phi), z};
}

BlochState sample_purified(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  // psi(i, k): i indexes the kept qubit, k the traced-out one.
  Eigen::Matrix2cd psi;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      psi(i, k) = {re, im};
    }
  }
  const Eigen::Matrix2cd rho = psi * psi.adjoint() / psi.squaredNorm();
  const Vec3 r(2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(),
               rho(0, 0).real() - rho(1, 1).real());
  const double n = r.norm();
  return BlochState(n > 1.0 ? Vec3(r / n) : r);
}

BlochState sample_spectral(Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const SpectralSample s = spectral_from_uniform(unif(rng));
  return from_spectral(s, random_unit_vector(rng));
}

std::complex<double> char_fn(const QubitObservable& obs) {
  if (obs.degenerate()) throw DegenerateObservable("char_fn: |a| = 0");
  const double x = obs.norm();
  double radial = 0.0;
  if (x < 1e-3) {
    const double x2 = x * x;
    radial = 1.0 - x2 / 10.0 + x2 * x2 / 280.0 - x2 * x2 * x2 / 15120.0;
  } else {
    radial = 3.0 * (std::sin(x) - x * std::cos(x)) / (x * x * x);
  }
  return radial * std::complex<double>(std::cos(obs.offset()), -std::sin(obs.offset()));
}

}  // namespace qunc
