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

#include "liouville/synthesis/shear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liouville/core/error.hpp"

namespace liouville {

ShearPair shear_factorization(const MapTable& q) {
  const NodeLattice& l = q.lattice();
  if (l.nx < 2 || l.ny < 2) throw Error(ErrorCode::kInvalidArgument, "shear factorization needs a 2D lattice");
  const ScalarTable& q1 = q.x_component();
  double row_slope = std::numeric_limits<double>::infinity();
  for (int j = 0; j < l.ny; ++j)
    for (int i = 0; i + 1 < l.nx; ++i)
      row_slope = std::min(row_slope, (q1.at(i + 1, j) - q1.at(i, j)) / l.dx);
  if (!(row_slope > 0.0))
    throw Error(ErrorCode::kNotNearIdentity, "first shear is not increasing along a row");

  // dS_2/dy = det DQ / dQ_1/dx on each cell; the determinant of a bilinear
  // map is affine on the cell, so its corner values bound it.
  double col_slope = std::numeric_limits<double>::infinity();
  for (int cj = 0; cj + 1 < l.ny; ++cj) {
    for (int ci = 0; ci + 1 < l.nx; ++ci) {
      for (int c = 0; c < 4; ++c) {
        const Mat2 jac = q.corner_jacobian(ci, cj, c & 1, c >> 1);
        col_slope = std::min(col_slope, jac.determinant() / jac(0, 0));
      }
    }
  }
  if (!(col_slope > 0.0))
    throw Error(ErrorCode::kNotNearIdentity, "second shear is not increasing along a column");

  ShearPair pair{ShearControl(0, q1), ShearControl(1, q.y_component(), q1), 0.0, row_slope,
                 col_slope};
  for (int k = 0; k < l.size(); ++k) {
    const Vec2 x = l.node(k);
    pair.factorization_error =
        std::max(pair.factorization_error, (pair.second.apply(pair.first.apply(x)) - q.at(k)).norm());
  }
  return pair;
}

namespace {

void check_shear_monotone(const ShearControl& s) {
  const ScalarTable& t = s.preimage() ? *s.preimage() : s.image();
  const int axis = s.preimage() ? 0 : s.axis();
  const NodeLattice& l = t.lattice();
  for (int j = 0; j < l.ny; ++j) {
    for (int i = 0; i < l.nx; ++i) {
      const int i1 = axis == 0 ? i + 1 : i;
      const int j1 = axis == 0 ? j : j + 1;
      if (i1 >= l.nx || j1 >= l.ny) continue;
      if (!(t.at(i1, j1) > t.at(i, j)))
        throw Error(ErrorCode::kNonMonotoneShear, "shear table is not increasing on its axis");
    }
  }
}

void check_frame_on(const VectorFieldFamily& family, const NodeLattice& l) {
  for (int k = 0; k < l.size(); ++k) frame_matrix(family, l.node(k));
}

}  // namespace

SchedulePiece shear_to_schedule_piece(const ShearControl& s, const VectorFieldFamily& family,
                                      double duration) {
  check_shear_monotone(s);
  SchedulePiece p;
  p.duration = duration;
  if (family.is_coordinate_frame()) {
    p.control = s;
    return p;
  }
  if (!family.is_frame())
    throw Error(ErrorCode::kInvalidArgument, "shear pieces need a two-field frame");
  check_frame_on(family, s.image().lattice());
  p.control = FrameInversionControl{s};
  return p;
}

SchedulePiece frame_inversion_controls(std::shared_ptr<const PotentialVelocityField> w,
                                       const VectorFieldFamily& family, double duration) {
  if (!family.is_frame())
    throw Error(ErrorCode::kInvalidArgument, "frame inversion needs a two-field family");
  check_frame_on(family, NodeLattice::vertices(w->grid()));
  SchedulePiece p;
  p.duration = duration;
  p.control = FrameInversionControl{std::move(w)};
  return p;
}

}  // namespace liouville
