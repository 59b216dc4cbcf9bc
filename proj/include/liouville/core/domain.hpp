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

#include "liouville/core/types.hpp"

namespace liouville {

// Axis-aligned open box. The boundary is excluded from the domain proper but
// the closure is what grids and lattices are laid on.
class Domain {
 public:
  // Throws kInvalidArgument unless upper > lower componentwise.
  Domain(Vec2 lower, Vec2 upper);

  static Domain unit() { return Domain(Vec2(0.0, 0.0), Vec2(1.0, 1.0)); }

  const Vec2& lower() const { return lower_; }
  const Vec2& upper() const { return upper_; }
  double width() const { return upper_.x() - lower_.x(); }
  double height() const { return upper_.y() - lower_.y(); }
  double diameter() const { return (upper_ - lower_).norm(); }
  double area() const { return width() * height(); }

  bool contains(const Vec2& p) const;
  bool contains_closure(const Vec2& p) const;
  Vec2 clamp(const Vec2& p) const;

  // Box grown by `fraction` of the side length on every side.
  Domain inflated(double fraction) const;

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.lower_ == b.lower_ && a.upper_ == b.upper_;
  }

 private:
  Vec2 lower_;
  Vec2 upper_;
};

}  // namespace liouville
