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

#include "liouville/core/velocity_field.hpp"

#include "liouville/core/error.hpp"

namespace liouville {

namespace {

NodeLattice x_face_lattice(const CellGrid& g) {
  return NodeLattice{g.domain().lower() + Vec2(0.0, 0.5 * g.dy()), g.dx(), g.dy(), g.nx() + 1,
                     g.ny()};
}

NodeLattice y_face_lattice(const CellGrid& g) {
  return NodeLattice{g.domain().lower() + Vec2(0.5 * g.dx(), 0.0), g.dx(), g.dy(), g.nx(),
                     g.ny() + 1};
}

}  // namespace

PotentialVelocityField::PotentialVelocityField(GridDensity rho_a, GridDensity rho_b,
                                               std::vector<double> face_gx,
                                               std::vector<double> face_gy)
    : rho_a_(std::move(rho_a)), rho_b_(std::move(rho_b)) {
  if (!(rho_a_.grid() == rho_b_.grid()))
    throw Error(ErrorCode::kGridMismatch, "velocity field densities on different grids");
  gx_ = ScalarTable(x_face_lattice(grid()), std::move(face_gx));
  gy_ = ScalarTable(y_face_lattice(grid()), std::move(face_gy));
}

double PotentialVelocityField::interpolated_density(double t, const Vec2& x) const {
  return (1.0 - t) * sample_density(rho_a_, x) + t * sample_density(rho_b_, x);
}

Vec2 PotentialVelocityField::evaluate(double t, const Vec2& x) const {
  const double rho = interpolated_density(t, x);
  return Vec2(-gx_.value(x, Extension::kClamp), -gy_.value(x, Extension::kClamp)) / rho;
}

Vec2 PotentialVelocityField::evaluate(double t, const Vec2& x, Mat2* jacobian) const {
  if (!jacobian) return evaluate(t, x);
  Vec2 da, db, dux, duy;
  const double rho = (1.0 - t) * sample_density(rho_a_, x, &da) + t * sample_density(rho_b_, x, &db);
  const Vec2 drho = (1.0 - t) * da + t * db;
  const Vec2 u(gx_.value(x, Extension::kClamp, &dux), gy_.value(x, Extension::kClamp, &duy));
  const Vec2 w = -u / rho;
  // w = -U / rho  =>  Dw = -DU / rho + U grad(rho)^T / rho^2
  Mat2 du;
  du.row(0) = dux.transpose();
  du.row(1) = duy.transpose();
  *jacobian = -du / rho + u * drho.transpose() / (rho * rho);
  return w;
}

}  // namespace liouville
