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

#pragma once

#include "liouville/core/grid.hpp"
#include "liouville/core/lattice.hpp"
#include "liouville/core/types.hpp"

namespace liouville {

// Time-dependent velocity w(t, x) = -grad(u)(x) / ((1 - t) rho_a(x) + t rho_b(x)).
//
// grad(u) is stored on a staggered layout: the x-derivative on vertical cell
// faces and the y-derivative on horizontal faces, with zero normal derivative
// on the boundary faces. Each component is interpolated linearly between faces
// along its own axis and between cell centers across it, so the normal
// velocity vanishes identically on the boundary of the box.
class PotentialVelocityField {
 public:
  // face_gx has (nx + 1) * ny entries (face i of row j at j * (nx + 1) + i),
  // face_gy has nx * (ny + 1) entries (face j of column i at j * nx + i).
  PotentialVelocityField(GridDensity rho_a, GridDensity rho_b, std::vector<double> face_gx,
                         std::vector<double> face_gy);

  const CellGrid& grid() const { return rho_a_.grid(); }
  const GridDensity& rho_a() const { return rho_a_; }
  const GridDensity& rho_b() const { return rho_b_; }
  const ScalarTable& gradient_x() const { return gx_; }
  const ScalarTable& gradient_y() const { return gy_; }

  double interpolated_density(double t, const Vec2& x) const;

  Vec2 evaluate(double t, const Vec2& x) const;
  // Same value; fills the spatial Jacobian dw/dx.
  Vec2 evaluate(double t, const Vec2& x, Mat2* jacobian) const;

 private:
  GridDensity rho_a_;
  GridDensity rho_b_;
  ScalarTable gx_;
  ScalarTable gy_;
};

}  // namespace liouville
