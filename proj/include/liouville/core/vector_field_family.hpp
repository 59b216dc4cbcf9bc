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

#include <string>
#include <vector>

#include "liouville/core/domain.hpp"
#include "liouville/core/types.hpp"

namespace liouville {

// The fields f_1..f_m of the driftless system x' = sum_i u_i f_i(x).
class VectorFieldFamily {
 public:
  enum class Kind {
    kCoordinate,  // f_i = e_i
    kRotated,     // orthonormal frame rotated by theta0 + twist * (x + y)
    kLinear,      // f_i(x) = A_i x
  };

  static VectorFieldFamily coordinate();
  static VectorFieldFamily rotated(double theta0, double twist = 0.0);
  static VectorFieldFamily linear(std::vector<Mat2> matrices);

  Kind kind() const { return kind_; }
  int size() const { return static_cast<int>(matrices_.empty() ? 2 : matrices_.size()); }
  double growth_constant() const { return growth_; }
  double theta0() const { return theta0_; }
  double twist() const { return twist_; }
  const std::vector<Mat2>& matrices() const { return matrices_; }

  bool is_coordinate_frame() const { return kind_ == Kind::kCoordinate; }
  // m = 2 families whose frame matrix may be inverted.
  bool is_frame() const { return size() == 2; }

  Vec2 eval(int i, const Vec2& x) const;
  Mat2 jacobian(int i, const Vec2& x) const;

  // Largest |f_i(x)| / (1 + |x|) over a sample grid of `box`; the growth
  // condition holds on the box iff this does not exceed growth_constant().
  double max_growth_ratio(const Domain& box, int samples = 33) const;

  std::string name() const;

 private:
  Kind kind_ = Kind::kCoordinate;
  double theta0_ = 0.0;
  double twist_ = 0.0;
  std::vector<Mat2> matrices_;
  double growth_ = 1.0;
};

struct FrameMatrix {
  Mat2 matrix;  // columns f_1(x), f_2(x)
  double determinant = 0.0;
};

// Throws kInvalidArgument unless the family has two fields, kSingularFrame if
// |det| < 1e-10.
FrameMatrix frame_matrix(const VectorFieldFamily& family, const Vec2& x);

struct FrameConditionReport {
  double min_abs_det = 0.0;
  double max_condition = 0.0;
};

FrameConditionReport frame_condition(const VectorFieldFamily& family, const Domain& box,
                                     int samples = 33);

}  // namespace liouville
