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

#include "liouville/moser/moser.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/core/error.hpp"
#include "liouville/core/parallel.hpp"

namespace liouville {

PotentialVelocityField moser_interpolation_field(const GridDensity& rho_mu,
                                                 const GridDensity& rho_nu,
                                                 const PoissonOptions& options) {
  if (!(rho_mu.grid() == rho_nu.grid()))
    throw Error(ErrorCode::kGridMismatch, "Moser densities must share a grid");
  if (rho_mu.min_value() <= 0.0 || rho_nu.min_value() <= 0.0)
    throw Error(ErrorCode::kNegativeDensity, "Moser densities must be strictly positive");
  const CellGrid& g = rho_mu.grid();
  const int nx = g.nx(), ny = g.ny();
  std::vector<double> diff(g.size());
  for (int k = 0; k < g.size(); ++k) diff[k] = rho_nu.at(k) - rho_mu.at(k);
  const PoissonSolution sol = solve_poisson_neumann(CellField(g, std::move(diff)), options);
  const std::vector<double>& u = sol.potential.values;

  // Face-normal derivatives; the wall faces carry the homogeneous Neumann zero.
  std::vector<double> gx(static_cast<std::size_t>(nx + 1) * ny, 0.0);
  std::vector<double> gy(static_cast<std::size_t>(nx) * (ny + 1), 0.0);
  for (int j = 0; j < ny; ++j)
    for (int i = 1; i < nx; ++i)
      gx[j * (nx + 1) + i] = (u[g.index(i, j)] - u[g.index(i - 1, j)]) / g.dx();
  for (int j = 1; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      gy[j * nx + i] = (u[g.index(i, j)] - u[g.index(i, j - 1)]) / g.dy();
  return PotentialVelocityField(rho_mu, rho_nu, std::move(gx), std::move(gy));
}

MoserIsotopy::MoserIsotopy(std::shared_ptr<const PotentialVelocityField> field, double step)
    : field_(std::move(field)), step_(step) {
  if (!(step_ > 0.0)) throw Error(ErrorCode::kInvalidArgument, "isotopy step must be positive");
}

Vec2 MoserIsotopy::integrate(double t0, double t1, const Vec2& x0, Mat2* jacobian) const {
  if (jacobian) jacobian->setIdentity();
  if (t1 == t0) return x0;
  const Domain box = field_->grid().domain().inflated(0.1);
  const int n = std::max(1, static_cast<int>(std::ceil(std::abs(t1 - t0) / step_ - 1e-9)));
  const double h = (t1 - t0) / n;
  Vec2 x = x0;
  Mat2 a1, a2, a3, a4;
  Mat2* p1 = jacobian ? &a1 : nullptr;
  Mat2* p2 = jacobian ? &a2 : nullptr;
  Mat2* p3 = jacobian ? &a3 : nullptr;
  Mat2* p4 = jacobian ? &a4 : nullptr;
  const PotentialVelocityField& w = *field_;
  for (int k = 0; k < n; ++k) {
    const double t = t0 + k * h;
    const Vec2 k1 = w.evaluate(t, x, p1);
    const Vec2 k2 = w.evaluate(t + 0.5 * h, x + 0.5 * h * k1, p2);
    const Vec2 k3 = w.evaluate(t + 0.5 * h, x + 0.5 * h * k2, p3);
    const Vec2 k4 = w.evaluate(t + h, x + h * k3, p4);
    if (jacobian) {
      Mat2& j = *jacobian;
      const Mat2 j1 = a1 * j;
      const Mat2 j2 = a2 * (j + 0.5 * h * j1);
      const Mat2 j3 = a3 * (j + 0.5 * h * j2);
      const Mat2 j4 = a4 * (j + h * j3);
      j += (h / 6.0) * (j1 + 2.0 * j2 + 2.0 * j3 + j4);
    }
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite() || !box.contains_closure(x))
      throw Error(ErrorCode::kBlowUp, "Moser trajectory left the working box");
  }
  return x;
}

Vec2 MoserIsotopy::evaluate(double t, const Vec2& x) const {
  return t == 0.0 ? x : integrate(0.0, t, x, nullptr);
}

Mat2 MoserIsotopy::jacobian(double t, const Vec2& x) const {
  Mat2 j;
  integrate(0.0, t, x, &j);
  return j;
}

Vec2 MoserIsotopy::transition(double t0, double t1, const Vec2& y) const {
  return integrate(t0, t1, y, nullptr);
}

MoserDiffeo build_moser_diffeo(const GridDensity& rho_mu, const GridDensity& rho_nu,
                               const MoserOptions& options) {
  auto field = std::make_shared<const PotentialVelocityField>(
      moser_interpolation_field(rho_mu, rho_nu, options.poisson));
  auto isotopy = std::make_shared<const MoserIsotopy>(field, options.step);
  const NodeLattice lattice = NodeLattice::vertices(rho_mu.grid());
  const std::vector<double> times{0.25, 0.5, 0.75, 1.0};
  const int n = lattice.size();
  std::vector<double> tx(n), ty(n), det(n);
  std::vector<double> dets(static_cast<std::size_t>(n) * times.size());
  parallel_for(n, [&](std::int64_t k) {
    Vec2 x = lattice.node(static_cast<int>(k));
    Mat2 j = Mat2::Identity();
    double t = 0.0;
    for (std::size_t c = 0; c < times.size(); ++c) {
      Mat2 step_j;
      x = isotopy->integrate(t, times[c], x, &step_j);
      j = step_j * j;
      t = times[c];
      dets[k * times.size() + c] = j.determinant();
      if (!(dets[k * times.size() + c] > 0.0))
        throw Error(ErrorCode::kOrientationLoss, "Moser flow Jacobian lost orientation");
    }
    tx[k] = x.x();
    ty[k] = x.y();
    det[k] = j.determinant();
  });
  MoserDiffeo d{isotopy, MapTable(lattice, std::move(tx), std::move(ty)),
                ScalarTable(lattice, std::move(det)), times, {}};
  for (std::size_t c = 0; c < times.size(); ++c) {
    double m = dets[c];
    for (int k = 0; k < n; ++k) m = std::min(m, dets[k * times.size() + c]);
    d.checkpoint_min_det.push_back(m);
  }
  return d;
}

}  // namespace liouville
