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

#include <cstdint>
#include <vector>

#include "liouville/core/grid.hpp"
#include "liouville/core/lattice.hpp"
#include "liouville/ot/transport_plan.hpp"

namespace liouville {

// T(x_i) = sum_j gamma_ij y_j / sum_j gamma_ij at every source point.
// Errors: kEmptyRow.
std::vector<Vec2> barycentric_map(const TransportPlan& plan);

// Barycentric map of a plan whose source points are the cell centers of
// `grid`, as a table on the center lattice (linear extension outside).
MapTable barycentric_map(const TransportPlan& plan, const CellGrid& grid);

struct MonotonicityReport {
  double min_pairing = 0.0;  // min <T(x) - T(x'), x - x'>
  int violations = 0;        // pairs below -1e-6 |x - x'|^2
  int probes = 0;
};

// Random pairs of distinct lattice nodes.
MonotonicityReport check_monotone(const MapTable& map, int n_pairs, std::uint64_t seed = 1);

}  // namespace liouville
