// Copyright 2026 The Liouville Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "liouville/moser/poisson.hpp"

#include <cmath>

#include "liouville/core/error.hpp"

namespace liouville {

namespace {

// y = Lap_h u with ghost-cell reflection at the walls.
void apply_laplacian(const CellGrid& g, const std::vector<double>& u, std::vector<double>* y) {
  const int nx = g.nx(), ny = g.ny();
  const double ix2 = 1.0 / (g.dx() * g.dx()), iy2 = 1.0 / (g.dy() * g.dy());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int k = g.index(i, j);
      const double c = u[k];
      const double l = i > 0 ? u[k - 1] : c;
      const double r = i + 1 < nx ? u[k + 1] : c;
      const double d = j > 0 ? u[k - nx] : c;
      const double t = j + 1 < ny ? u[k + nx] : c;
      (*y)[k] = (l + r - 2.0 * c) * ix2 + (d + t - 2.0 * c) * iy2;
    }
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> t(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) t[k] = a[k] * b[k];
  return pairwise_sum(t);
}

void remove_mean(std::vector<double>* v) {
  const double m = pairwise_sum(*v) / static_cast<double>(v->size());
  for (double& x : *v) x -= m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

CellField discrete_laplacian(const CellField& u) {
  CellField out(u.grid, 0.0);
  apply_laplacian(u.grid, u.values, &out.values);
  return out;
}

PoissonSolution solve_poisson_neumann(const CellField& source, const PoissonOptions& options) {
  const CellGrid& g = source.grid;
  for (double v : source.values)
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "Poisson source is not finite");
  if (std::abs(source.integral()) > options.compatibility)
    throw Error(ErrorCode::kIncompatibleSource, "Neumann source must integrate to zero");

  const int n = g.size();
  const int max_it = options.max_iterations > 0 ? options.max_iterations : 10 * n;
  std::vector<double> rhs = source.values;
  remove_mean(&rhs);

  // CG on A = -Lap_h, which is symmetric positive definite on zero-mean fields.
  std::vector<double> u(n, 0.0), r(n), p(n), ap(n), lap(n);
  for (int k = 0; k < n; ++k) r[k] = -rhs[k];
  p = r;
  double rr = dot(r, r);
  PoissonSolution sol{CellField(g, 0.0), 0.0, 0};
  auto residual = [&] {
    apply_laplacian(g, u, &lap);
    return max_abs_diff(lap, rhs);
  };
  double res = residual();
  int it = 0;
  while (res > options.tolerance) {
    if (it >= max_it)
      throw Error(ErrorCode::kNonConvergence,
                  "Poisson CG stalled at residual " + std::to_string(res));
    apply_laplacian(g, p, &ap);
    for (double& v : ap) v = -v;
    const double pap = dot(p, ap);
    if (!(pap > 0.0)) break;
    const double alpha = rr / pap;
    for (int k = 0; k < n; ++k) {
      u[k] += alpha * p[k];
      r[k] -= alpha * ap[k];
    }
    remove_mean(&r);
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (int k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
    ++it;
    // The true residual is checked periodically against drift of the recursive one.
    if (it % 10 == 0 || rr == 0.0) res = residual();
  }
  remove_mean(&u);
  sol.residual = residual();
  if (sol.residual > options.tolerance)
    throw Error(ErrorCode::kNonConvergence,
                "Poisson residual " + std::to_string(sol.residual) + " above tolerance");
  sol.potential = CellField(g, std::move(u));
  sol.iterations = it;
  return sol;
}

}  // namespace liouville
