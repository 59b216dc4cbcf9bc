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

enum class IsotopyMethod { kDisplacement, kMoserTimeRescaled };

// Path t -> H(t, .) of diffeomorphisms with H(0, .) = Id.
class IsotopyPath {
 public:
  virtual ~IsotopyPath() = default;

  virtual IsotopyMethod method() const = 0;
  virtual Vec2 evaluate(double t, const Vec2& x) const = 0;
  virtual Mat2 jacobian(double t, const Vec2& x) const = 0;

  // H(t1, .) o H(t0, .)^{-1} at y. The default inverts H(t0, .) by damped
  // Newton from the identity guess (20 iterations, step tolerance 1e-10) and
  // throws kNewtonDivergence on failure.
  virtual Vec2 transition(double t0, double t1, const Vec2& y) const;

  // H(t, .)^{-1}(y) by the same Newton iteration.
  Vec2 invert(double t, const Vec2& y) const;
};

}  // namespace liouville
