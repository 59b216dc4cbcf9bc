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

#include <cmath>
#include <functional>
#include <numbers>

#include "liouville/core/lattice.hpp"
#include "liouville/core/schedule.hpp"

namespace liouville::testing {

inline FeedbackSchedule constant_schedule(std::vector<double> c) {
  SchedulePiece p;
  p.control = ConstantControl{c};
  return FeedbackSchedule(static_cast<int>(c.size()), {p});
}

// Shear on `axis` with K tabulated from f on the vertices of an n x n grid
// of the unit square.
inline ShearControl table_shear(int axis, int n, const std::function<double(const Vec2&)>& k) {
  const NodeLattice l = NodeLattice::vertices(CellGrid(Domain::unit(), n, n));
  std::vector<double> v(l.size());
  for (int i = 0; i < l.size(); ++i) v[i] = k(l.node(i));
  return ShearControl(axis, ScalarTable(l, std::move(v)));
}

inline FeedbackSchedule shear_schedule(const ShearControl& s, int field_count = 2) {
  SchedulePiece p;
  p.control = s;
  return FeedbackSchedule(field_count, {p});
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace liouville::testing
