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

#include "qunc/quadrature.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

namespace qunc::quad {

namespace {

constexpr std::size_t kWorkspaceSize = 2000;

double trampoline(double x, void* params) {
  return (*static_cast<const Integrand*>(params))(x);
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const {
    gsl_integration_workspace_free(w);
  }
};

// GSL reports non-convergence through its error handler, which aborts by
// default; the result it returns is still the best estimate available.
void disable_gsl_abort() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

}  // namespace

double integrate(const Integrand& f, double a, double b, Tolerance tol,
                 std::vector<double> breakpoints) {
  if (!(b > a)) return 0.0;
  disable_gsl_abort();
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(
      gsl_integration_workspace_alloc(kWorkspaceSize));
  gsl_function fn{&trampoline, const_cast<Integrand*>(&f)};
  double result = 0.0;
  double abserr = 0.0;

  breakpoints.erase(std::remove_if(breakpoints.begin(), breakpoints.end(),
                                   [&](double p) { return !(p > a && p < b); }),
                    breakpoints.end());
  if (breakpoints.empty()) {
    gsl_integration_qags(&fn, a, b, tol.abs, tol.rel, kWorkspaceSize, ws.get(),
                         &result, &abserr);
    return result;
  }
  breakpoints.push_back(a);
  breakpoints.push_back(b);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()),
                    breakpoints.end());
  gsl_integration_qagp(&fn, breakpoints.data(), breakpoints.size(), tol.abs,
                       tol.rel, kWorkspaceSize, ws.get(), &result, &abserr);
  return result;
}

double gauss_legendre(const Integrand& f, double a, double b, int order) {
  static std::mutex mu;
  static std::map<int, gsl_integration_glfixed_table*> tables;
  gsl_integration_glfixed_table* table = nullptr;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = tables[order];
    if (slot == nullptr) slot = gsl_integration_glfixed_table_alloc(order);
    table = slot;
  }
  gsl_function fn{&trampoline, const_cast<Integrand*>(&f)};
  return gsl_integration_glfixed(&fn, a, b, table);
}

}  // namespace qunc::quad
