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

#include "liouville/ot/map_recovery.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "liouville/core/error.hpp"

namespace liouville {

std::vector<Vec2> barycentric_map(const TransportPlan& plan) { return plan.row_means(); }

MapTable barycentric_map(const TransportPlan& plan, const CellGrid& grid) {
  if (plan.source().size() != grid.size())
    throw Error(ErrorCode::kGridMismatch, "plan source is not the grid's cell centers");
  const std::vector<Vec2> t = plan.row_means();
  std::vector<double> tx(t.size()), ty(t.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    tx[k] = t[k].x();
    ty[k] = t[k].y();
  }
  return MapTable(NodeLattice::centers(grid), std::move(tx), std::move(ty));
}

MonotonicityReport check_monotone(const MapTable& map, int n_pairs, std::uint64_t seed) {
  const NodeLattice& l = map.lattice();
  MonotonicityReport r;
  r.min_pairing = std::numeric_limits<double>::infinity();
  if (l.size() < 2 || n_pairs <= 0) {
    r.min_pairing = 0.0;
    return r;
  }
  std::mt19937_64 rng(seed);
  const auto n = static_cast<std::uint64_t>(l.size());
  for (int s = 0; s < n_pairs; ++s) {
    const int a = static_cast<int>(rng() % n);
    int b = static_cast<int>(rng() % (n - 1));
    if (b >= a) ++b;
    const Vec2 dx = l.node(a) - l.node(b);
    const double pairing = (map.at(a) - map.at(b)).dot(dx);
    r.min_pairing = std::min(r.min_pairing, pairing);
    if (pairing < -1e-6 * dx.squaredNorm()) ++r.violations;
    ++r.probes;
  }
  return r;
}

}  // namespace liouville
