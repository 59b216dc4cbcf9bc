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

#include "liouville/core/vector_field_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "liouville/core/error.hpp"

namespace liouville {

VectorFieldFamily VectorFieldFamily::coordinate() { return VectorFieldFamily(); }

VectorFieldFamily VectorFieldFamily::rotated(double theta0, double twist) {
  VectorFieldFamily f;
  f.kind_ = Kind::kRotated;
  f.theta0_ = theta0;
  f.twist_ = twist;
  f.growth_ = 1.0;
  return f;
}

VectorFieldFamily VectorFieldFamily::linear(std::vector<Mat2> matrices) {
  if (matrices.empty() || static_cast<int>(matrices.size()) > kMaxFields)
    throw Error(ErrorCode::kInvalidArgument, "linear family needs 1 to 4 matrices");
  VectorFieldFamily f;
  f.kind_ = Kind::kLinear;
  f.growth_ = 0.0;
  for (const Mat2& a : matrices) {
    Eigen::JacobiSVD<Mat2> svd(a);
    f.growth_ = std::max(f.growth_, svd.singularValues()(0));
  }
  f.matrices_ = std::move(matrices);
  return f;
}

Vec2 VectorFieldFamily::eval(int i, const Vec2& x) const {
  switch (kind_) {
    case Kind::kCoordinate:
      return i == 0 ? Vec2(1.0, 0.0) : Vec2(0.0, 1.0);
    case Kind::kRotated: {
      const double th = theta0_ + twist_ * (x.x() + x.y());
      const double c = std::cos(th), s = std::sin(th);
      return i == 0 ? Vec2(c, s) : Vec2(-s, c);
    }
    case Kind::kLinear:
      return matrices_[i] * x;
  }
  return Vec2::Zero();
}

Mat2 VectorFieldFamily::jacobian(int i, const Vec2& x) const {
  switch (kind_) {
    case Kind::kCoordinate:
      return Mat2::Zero();
    case Kind::kRotated: {
      if (twist_ == 0.0) return Mat2::Zero();
      const double th = theta0_ + twist_ * (x.x() + x.y());
      const double c = std::cos(th), s = std::sin(th);
      // d f / d theta times grad theta = twist * (1, 1)
      const Vec2 df = i == 0 ? Vec2(-s, c) : Vec2(-c, -s);
      return df * Vec2(twist_, twist_).transpose();
    }
    case Kind::kLinear:
      return matrices_[i];
  }
  return Mat2::Zero();
}

double VectorFieldFamily::max_growth_ratio(const Domain& box, int samples) const {
  double worst = 0.0;
  for (int b = 0; b < samples; ++b) {
    for (int a = 0; a < samples; ++a) {
      const Vec2 x = box.lower() + Vec2(box.width() * a / (samples - 1.0),
                                        box.height() * b / (samples - 1.0));
      for (int i = 0; i < size(); ++i)
        worst = std::max(worst, eval(i, x).norm() / (1.0 + x.norm()));
    }
  }
  return worst;
}

std::string VectorFieldFamily::name() const {
  switch (kind_) {
    case Kind::kCoordinate: return "coordinate";
    case Kind::kRotated: return "rotated";
    case Kind::kLinear: return "linear";
  }
  return "unknown";
}

FrameMatrix frame_matrix(const VectorFieldFamily& family, const Vec2& x) {
  if (family.size() != 2) throw Error(ErrorCode::kInvalidArgument, "frame needs exactly two fields");
  FrameMatrix f;
  f.matrix.col(0) = family.eval(0, x);
  f.matrix.col(1) = family.eval(1, x);
  f.determinant = f.matrix.determinant();
  if (!(std::abs(f.determinant) >= 1e-10))
    throw Error(ErrorCode::kSingularFrame, "frame matrix is singular");
  return f;
}

FrameConditionReport frame_condition(const VectorFieldFamily& family, const Domain& box,
                                     int samples) {
  FrameConditionReport r;
  r.min_abs_det = std::numeric_limits<double>::infinity();
  for (int b = 0; b < samples; ++b) {
    for (int a = 0; a < samples; ++a) {
      const Vec2 x = box.lower() + Vec2(box.width() * a / (samples - 1.0),
                                        box.height() * b / (samples - 1.0));
      const FrameMatrix f = frame_matrix(family, x);
      Eigen::JacobiSVD<Mat2> svd(f.matrix);
      r.min_abs_det = std::min(r.min_abs_det, std::abs(f.determinant));
      r.max_condition =
          std::max(r.max_condition, svd.singularValues()(0) / svd.singularValues()(1));
    }
  }
  return r;
}

}  // namespace liouville
