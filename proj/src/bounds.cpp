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

#include "qunc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <gsl/gsl_multimin.h>

#include "qunc/errors.hpp"
#include "qunc/linalg.hpp"
#include "qunc/parallel.hpp"

namespace qunc {

std::string to_string(BoundKind kind) {
  return kind == BoundKind::variance_sum ? "variance_sum" : "deviation_sum";
}

std::string to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::eigenvalue_formula:
      return "eigenvalue_formula";
    case BoundMethod::cross_product_formula:
      return "cross_product_formula";
    case BoundMethod::brute_force:
      return "brute_force";
    case BoundMethod::dependent_family:
      return "dependent_family";
  }
  return "unknown";
}

namespace {

RegionPoint tuple_at(const Family& family, const Vec3& r) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(family.size()));
  for (std::size_t k = 0; k < family.size(); ++k) {
    const double p = family[k].vec().dot(r);
    x(static_cast<Eigen::Index>(k)) = std::sqrt(std::max(family[k].vec().squaredNorm() - p * p, 0.0));
  }
  return {x};
}

// The variance sum Tr T - r^T (M M^T) r is minimized on the unit sphere by
// the top eigenvector of the frame operator.
Vec3 top_frame_direction(const GramMatrix& t) {
  const auto eig = linalg::sym_eigenvalues(t.frame());
  return linalg::sym_eigenvector(t.frame(), eig[2]);
}

BoundReport eigen_report(const Family& family, const GramMatrix& t, double value) {
  const Vec3 u = top_frame_direction(t);
  return {BoundKind::variance_sum, std::max(value, 0.0), tuple_at(family, u),
          BoundMethod::eigenvalue_formula, u};
}

}  // namespace

BoundReport variance_sum_bound_pair(const QubitObservable& a, const QubitObservable& b) {
  const Family family{a, b};
  const GramMatrix t = gram(family);
  if (decompose(family).rank < 2) {
    const Vec3 u = a.vec().normalized();
    return {BoundKind::variance_sum, 0.0, tuple_at(family, u), BoundMethod::dependent_family, u};
  }
  return eigen_report(family, t, t.lambda_min());
}

BoundReport deviation_sum_bound_pair(const QubitObservable& a, const QubitObservable& b) {
  const Family family{a, b};
  (void)gram(family);
  if (decompose(family).rank < 2) {
    const Vec3 u = a.vec().normalized();
    return {BoundKind::deviation_sum, 0.0, tuple_at(family, u), BoundMethod::dependent_family, u};
  }
  const double na = a.norm();
  const double nb = b.norm();
  const double value = a.vec().cross(b.vec()).norm() / std::max(na, nb);
  // Intercept (0, |b| sin t) is the eigenstate of a, (|a| sin t, 0) that of b.
  const Vec3 u = na >= nb ? Vec3(a.vec() / na) : Vec3(b.vec() / nb);
  RegionPoint p = tuple_at(family, u);
  p.coords(na >= nb ? 0 : 1) = 0.0;
  return {BoundKind::deviation_sum, value, p, BoundMethod::cross_product_formula, u};
}

BoundReport variance_sum_bound_triple(const QubitObservable& a, const QubitObservable& b,
                                      const QubitObservable& c) {
  const Family family{a, b, c};
  const GramMatrix t = gram(family);
  if (decompose(family).rank < 3) {
    throw LinearlyDependentFamily("variance_sum_bound_triple needs three independent vectors");
  }
  return eigen_report(family, t, t.trace() - t.lambda_max());
}

BoundReport variance_sum_bound_n(const Family& family) {
  const GramMatrix t = gram(family);
  return eigen_report(family, t, t.trace() - linalg::sym_eigenvalues(t.frame())[2]);
}

// ---------------------------------------------------------------------------

namespace {

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  Vec3 u = Vec3::UnitZ();
};

class SphereObjective {
 public:
  SphereObjective(const Family& family, Objective objective)
      : objective_(objective) {
    for (const auto& o : family) vecs_.push_back(o.vec());
  }

  double operator()(const Vec3& u) const {
    double total = 0.0;
    for (const Vec3& a : vecs_) {
      const double p = a.dot(u);
      const double var = std::max(a.squaredNorm() - p * p, 0.0);
      total += objective_ == Objective::sum ? std::sqrt(var) : var;
    }
    return total;
  }

 private:
  Objective objective_;
  std::vector<Vec3> vecs_;
};

Vec3 fibonacci_point(std::int64_t i, std::int64_t n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden * static_cast<double>(i);
  return {s * std::cos(phi), s * std::sin(phi), z};
}

// Local chart u(p, q) = normalize(origin + p e1 + q e2) around a start point.
struct Chart {
  const SphereObjective* f;
  Vec3 origin;
  Vec3 e1;
  Vec3 e2;

  Vec3 at(double p, double q) const { return (origin + p * e1 + q * e2).normalized(); }
};

double chart_value(const gsl_vector* v, void* params) {
  const auto* c = static_cast<const Chart*>(params);
  return (*c->f)(c->at(gsl_vector_get(v, 0), gsl_vector_get(v, 1)));
}

Candidate refine(const SphereObjective& f, const Candidate& start, double step) {
  Chart chart{&f, start.u, {}, {}};
  Eigen::Index axis = 0;
  start.u.cwiseAbs().minCoeff(&axis);
  chart.e1 = start.u.cross(Vec3::Unit(axis)).normalized();
  chart.e2 = start.u.cross(chart.e1);

  gsl_multimin_function fn{&chart_value, 2, &chart};
  gsl_vector* x = gsl_vector_calloc(2);
  gsl_vector* steps = gsl_vector_alloc(2);
  gsl_vector_set_all(steps, step);
  gsl_multimin_fminimizer* s =
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2);
  gsl_multimin_fminimizer_set(s, &fn, x, steps);
  for (int iter = 0; iter < 2000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-12) == GSL_SUCCESS) break;
  }
  Candidate out{s->fval, chart.at(gsl_vector_get(s->x, 0), gsl_vector_get(s->x, 1))};
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(steps);
  gsl_vector_free(x);
  return out.value < start.value ? out : start;
}

}  // namespace

BoundReport brute_force_min(const Family& family, Objective objective, int resolution) {
  if (family.empty()) throw DomainError("brute_force_min: empty family");
  if (resolution < 2) throw DomainError("brute_force_min: resolution must be >= 2");
  const SphereObjective f(family, objective);
  const std::int64_t n = static_cast<std::int64_t>(resolution) * resolution;

  // Keep the best few grid points per chunk; the cone-shaped minima of the
  // deviation sum make a single start fragile.
  constexpr int kChunks = 8;
  constexpr std::size_t kKeep = 4;
  const auto per_chunk = map_chunks<std::vector<Candidate>>(kChunks, [&](int c) {
    std::vector<Candidate> best;
    std::int64_t begin = 0;
    for (int j = 0; j < c; ++j) begin += chunk_size(n, kChunks, j);
    const std::int64_t end = begin + chunk_size(n, kChunks, c);
    for (std::int64_t i = begin; i < end; ++i) {
      const Vec3 u = fibonacci_point(i, n);
      const double v = f(u);
      if (best.size() < kKeep || v < best.back().value) {
        best.push_back({v, u});
        std::sort(best.begin(), best.end(),
                  [](const Candidate& x, const Candidate& y) { return x.value < y.value; });
        if (best.size() > kKeep) best.pop_back();
      }
    }
    return best;
  });
  std::vector<Candidate> pool;
  for (const auto& v : per_chunk) pool.insert(pool.end(), v.begin(), v.end());
  std::sort(pool.begin(), pool.end(),
            [](const Candidate& x, const Candidate& y) { return x.value < y.value; });
  pool.resize(std::min(pool.size(), kKeep));

  const double spacing = std::sqrt(4.0 * std::numbers::pi / static_cast<double>(n));
  Candidate best;
  for (const Candidate& start : pool) {
    const Candidate c = refine(f, start, spacing);
    if (c.value < best.value) best = c;
  }
  const BoundKind kind =
      objective == Objective::sum ? BoundKind::deviation_sum : BoundKind::variance_sum;
  return {kind, best.value, tuple_at(family, best.u), BoundMethod::brute_force, best.u};
}

}  // namespace qunc
