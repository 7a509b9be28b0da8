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

#include "qunc/witness.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "qunc/bounds.hpp"
#include "qunc/errors.hpp"

namespace qunc {

namespace {

using Complex = std::complex<double>;
constexpr double kSlack = 1e-10;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::Matrix2cd qubit_matrix(const QubitObservable& o) {
  const Vec3& a = o.vec();
  Eigen::Matrix2cd m;
  m << Complex(o.offset() + a(2), 0.0), Complex(a(0), -a(1)),
       Complex(a(0), a(1)), Complex(o.offset() - a(2), 0.0);
  return m;
}

void check_sites(int sites) {
  if (sites < 2 || sites > 3) {
    throw DimensionMismatch("composite observables act on 2 or 3 sites, got " +
                            std::to_string(sites));
  }
}

}  // namespace

CompositeObservable::CompositeObservable(std::vector<QubitObservable> parts)
    : parts_(std::move(parts)) {
  check_sites(sites());
}

MultipartiteState MultipartiteState::product_mixture(std::vector<ProductTerm> terms) {
  if (terms.empty()) throw DomainError("product mixture needs at least one term");
  const int sites = static_cast<int>(terms.front().sites.size());
  check_sites(sites);
  double total = 0.0;
  for (const auto& t : terms) {
    if (static_cast<int>(t.sites.size()) != sites) {
      throw DimensionMismatch("product terms disagree on the number of sites");
    }
    if (!(t.weight >= 0.0)) throw DomainError("negative mixture weight");
    total += t.weight;
  }
  if (std::abs(total - 1.0) > kSlack) {
    throw DomainError("mixture weights sum to " + std::to_string(total) + ", not 1");
  }
  MultipartiteState s;
  s.sites_ = sites;
  s.terms_ = std::move(terms);
  return s;
}

MultipartiteState MultipartiteState::dense(Eigen::MatrixXcd rho) {
  const Eigen::Index dim = rho.rows();
  if (rho.cols() != dim || (dim != 4 && dim != 8)) {
    throw StateFormatError("dense state must be 4x4 or 8x8, got " + std::to_string(rho.rows()) +
                           "x" + std::to_string(rho.cols()));
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kSlack) {
    throw StateFormatError("dense state is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > kSlack) {
    throw StateFormatError("dense state trace is not 1");
  }
  const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(herm).eigenvalues()(0);
  if (min_eig < -kSlack) {
    throw StateFormatError("dense state is not positive semidefinite (eigenvalue " +
                           std::to_string(min_eig) + ")");
  }
  MultipartiteState s;
  s.sites_ = dim == 4 ? 2 : 3;
  s.rho_ = herm;
  return s;
}

Eigen::MatrixXcd MultipartiteState::to_dense() const {
  if (rho_) return *rho_;
  const Eigen::Index dim = Eigen::Index{1} << sites_;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : terms_) {
    Eigen::MatrixXcd term = t.sites.front().density_matrix();
    for (int s = 1; s < sites_; ++s) term = kron(term, t.sites[s].density_matrix());
    out += t.weight * term;
  }
  return out;
}

Eigen::MatrixXcd composite_matrix(const CompositeObservable& m) {
  const Eigen::Index dim = Eigen::Index{1} << m.sites();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int s = 0; s < m.sites(); ++s) {
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(1, 1);
    for (int t = 0; t < m.sites(); ++t) {
      term = kron(term, t == s ? Eigen::MatrixXcd(qubit_matrix(m.part(t)))
                               : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity()));
    }
    out += term;
  }
  return out;
}

double composite_variance_dense(const CompositeObservable& m, const Eigen::MatrixXcd& rho) {
  if (rho.rows() != (Eigen::Index{1} << m.sites())) {
    throw DimensionMismatch("state dimension does not match the composite observable");
  }
  const Eigen::MatrixXcd op = composite_matrix(m);
  const double first = (op * rho).trace().real();
  const double second = (op * op * rho).trace().real();
  return second - first * first;
}

double composite_variance(const CompositeObservable& m, const MultipartiteState& state) {
  if (m.sites() != state.sites()) {
    throw DimensionMismatch("observable has " + std::to_string(m.sites()) +
                            " sites, state has " + std::to_string(state.sites()));
  }
  if (state.is_dense()) return composite_variance_dense(m, state.to_dense());

  // Var M = sum_s Var_{rho_s} A_s + 2 sum_{s<t} Cov(A_s, A_t), where the
  // covariances come only from the mixing weights.
  const int n = m.sites();
  std::vector<Vec3> reduced(n, Vec3::Zero());
  std::vector<double> site_mean(n, 0.0);
  Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(n, n);
  for (const auto& term : state.terms()) {
    std::vector<double> means(n);
    for (int s = 0; s < n; ++s) {
      means[s] = mean(m.part(s), term.sites[s]);
      reduced[s] += term.weight * term.sites[s].r();
      site_mean[s] += term.weight * means[s];
    }
    for (int s = 0; s < n; ++s) {
      for (int t = s + 1; t < n; ++t) joint(s, t) += term.weight * means[s] * means[t];
    }
  }
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    const double p = m.part(s).vec().dot(reduced[s]);
    total += m.part(s).vec().squaredNorm() - p * p;
    for (int t = s + 1; t < n; ++t) total += 2.0 * (joint(s, t) - site_mean[s] * site_mean[t]);
  }
  return total;
}

double separability_bound(const std::vector<Family>& site_families) {
  double total = 0.0;
  for (const Family& f : site_families) {
    if (f.size() == 2) {
      total += variance_sum_bound_pair(f[0], f[1]).value;
    } else if (f.size() == 3) {
      total += variance_sum_bound_triple(f[0], f[1], f[2]).value;
    } else {
      throw DimensionMismatch("separability bound uses 2 or 3 measurements per site");
    }
  }
  return total;
}

double separability_bound(const std::vector<CompositeObservable>& ms) {
  if (ms.empty()) throw DimensionMismatch("no composite observables");
  const int sites = ms.front().sites();
  std::vector<Family> families(sites);
  for (const auto& m : ms) {
    if (m.sites() != sites) throw DimensionMismatch("composite observables disagree on sites");
    for (int s = 0; s < sites; ++s) families[s].push_back(m.part(s));
  }
  return separability_bound(families);
}

WitnessVerdict evaluate_witness(const std::vector<CompositeObservable>& ms,
                                const MultipartiteState& state) {
  const double rhs = separability_bound(ms);
  double lhs = 0.0;
  for (const auto& m : ms) lhs += composite_variance(m, state);
  return {lhs, rhs, lhs < rhs - kSlack, rhs - lhs};
}

MultipartiteState random_separable(int sites, int mixture_size, Rng& rng) {
  if (mixture_size < 1) throw DomainError("mixture_size must be >= 1");
  check_sites(sites);
  std::exponential_distribution<double> expo(1.0);
  std::vector<ProductTerm> terms(static_cast<std::size_t>(mixture_size));
  double total = 0.0;
  for (auto& t : terms) {
    t.weight = expo(rng);
    total += t.weight;
    for (int s = 0; s < sites; ++s) t.sites.push_back(sample_spectral(rng));
  }
  for (auto& t : terms) t.weight /= total;
  // Absorb the last rounding bit so the weights sum to 1 exactly enough.
  double rest = 1.0;
  for (std::size_t k = 0; k + 1 < terms.size(); ++k) rest -= terms[k].weight;
  terms.back().weight = std::max(rest, 0.0);
  return MultipartiteState::product_mixture(std::move(terms));
}

namespace {

struct PureObjective {
  std::vector<Eigen::MatrixXcd> ops;
  std::vector<Eigen::MatrixXcd> squares;

  double value(const Eigen::VectorXcd& psi) const {
    double total = 0.0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const double m1 = psi.dot(ops[i] * psi).real();
      total += psi.dot(squares[i] * psi).real() - m1 * m1;
    }
    return total;
  }

  // Gradient with respect to conj(psi), projected on the sphere's tangent.
  Eigen::VectorXcd gradient(const Eigen::VectorXcd& psi) const {
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(psi.size());
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const Eigen::VectorXcd mp = ops[i] * psi;
      const double m1 = psi.dot(mp).real();
      g += squares[i] * psi - 2.0 * m1 * mp;
    }
    return g - psi.dot(g) * psi;
  }
};

}  // namespace

CompositeMinimum composite_min_bound(const std::vector<CompositeObservable>& ms,
                                     std::uint64_t seed, int restarts) {
  if (ms.empty()) throw DimensionMismatch("no composite observables");
  PureObjective f;
  double scale = 0.0;
  for (const auto& m : ms) {
    if (m.sites() != ms.front().sites()) throw DimensionMismatch("composite observables disagree on sites");
    f.ops.push_back(composite_matrix(m));
    f.squares.push_back(f.ops.back() * f.ops.back());
    scale += f.squares.back().cwiseAbs().maxCoeff();
  }
  const Eigen::Index dim = f.ops.front().rows();

  CompositeMinimum best{INFINITY, false, Eigen::VectorXcd::Zero(dim)};
  for (int run = 0; run < restarts; ++run) {
    Rng rng(worker_seed(seed, static_cast<std::uint64_t>(run)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd psi(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      psi(i) = {re, im};
    }
    psi.normalize();
    double value = f.value(psi);
    double step = 0.5 / scale;
    bool converged = false;
    for (int iter = 0; iter < 20000 && !converged; ++iter) {
      const Eigen::VectorXcd g = f.gradient(psi);
      const double gnorm2 = g.squaredNorm();
      if (std::sqrt(gnorm2) < 1e-9 * scale) {
        converged = true;
        break;
      }
      bool accepted = false;
      for (int k = 0; k < 60; ++k) {
        const Eigen::VectorXcd trial = (psi - step * g).normalized();
        const double tv = f.value(trial);
        if (tv <= value - 1e-4 * step * gnorm2) {
          psi = trial;
          value = tv;
          step *= 1.5;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      // No descent at machine precision: a stationary point.
      if (!accepted) converged = true;
    }
    if (value < best.value) best = {value, converged, psi};
  }
  best.value = std::max(best.value, 0.0);
  return best;
}

MultipartiteState singlet_state() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  return MultipartiteState::dense(psi * psi.adjoint());
}

MultipartiteState ghz_state() {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(8);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(7) = 1.0 / std::sqrt(2.0);
  return MultipartiteState::dense(psi * psi.adjoint());
}

}  // namespace qunc
