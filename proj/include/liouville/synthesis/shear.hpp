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

#include <memory>

#include "liouville/core/lattice.hpp"
#include "liouville/core/schedule.hpp"
#include "liouville/core/vector_field_family.hpp"
#include "liouville/core/velocity_field.hpp"

namespace liouville {

struct ShearPair {
  ShearControl first;   // S_1(x, y) = (Q_1(x, y), y)
  ShearControl second;  // S_2 = Q o S_1^{-1}, moves y only
  double factorization_error = 0.0;  // max over nodes |S_2(S_1(x)) - Q(x)|
  double min_row_slope = 0.0;     // min node difference ratio of Q_1 along rows
  double min_column_slope = 0.0;  // min d/dy of S_2 along columns (cell corners)
};

// Splits a near-identity sampled map into two coordinate shears whose
// composition equals the bilinear interpolant of Q on the whole lattice.
// Throws kNotNearIdentity if Q_1 is not increasing along every row or S_2
// is not increasing along every column.
ShearPair shear_factorization(const MapTable& q);

// Schedule piece whose time-1 flow is the shear `s` for a coordinate frame:
// only control `s.axis()` is active. For a general invertible two-field frame
// the same straight-line velocity is produced through frame inversion (both
// controls active). Throws kNonMonotoneShear if the shear's table is not
// increasing along its active axis, kSingularFrame for a non-invertible frame.
SchedulePiece shear_to_schedule_piece(const ShearControl& s, const VectorFieldFamily& family,
                                      double duration = 1.0);

// Piece with v(t, x) = [f_1(x) f_2(x)]^{-1} w(t, x) over the whole field time
// interval [0, 1], replayed in `duration`.
// Throws kSingularFrame if the frame is singular at some node of the field's
// grid.
SchedulePiece frame_inversion_controls(std::shared_ptr<const PotentialVelocityField> w,
                                       const VectorFieldFamily& family, double duration = 1.0);

}  // namespace liouville
