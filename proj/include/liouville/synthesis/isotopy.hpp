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
#include <vector>

#include "liouville/core/isotopy.hpp"
#include "liouville/core/lattice.hpp"

namespace liouville {

// H(t, x) = (1 - t) x + t T(x) for a sampled map T.
class DisplacementIsotopy final : public IsotopyPath {
 public:
  explicit DisplacementIsotopy(MapTable target);

  IsotopyMethod method() const override { return IsotopyMethod::kDisplacement; }
  Vec2 evaluate(double t, const Vec2& x) const override;
  Mat2 jacobian(double t, const Vec2& x) const override;

  const MapTable& target() const { return target_; }

 private:
  MapTable target_;
};

struct FoldScan {
  double min_det = 0.0;  // min over probe times, cells and cell corners
  int probe_times = 0;
};

// Builds the displacement isotopy of T after checking that
// det[(1 - t) Id + t DT] > 0 at `probe_times` evenly spaced t in [0, 1], at
// every corner of every lattice cell (with that cell's bilinear Jacobian),
// which makes each interpolated H(t, .) fold-free. Throws kFoldOver.
std::shared_ptr<const DisplacementIsotopy> displacement_isotopy(const MapTable& target,
                                                                int probe_times = 9,
                                                                FoldScan* scan = nullptr);

struct Fragments {
  std::vector<MapTable> maps;      // Q_1 .. Q_N on the lattice
  double max_displacement = 0.0;   // max_k max_x |Q_k(x) - x|
  double composition_error = 0.0;  // sup over nodes |Q_N o .. o Q_1 - H(1, .)|
  double composition_tolerance = 0.0;  // 1e-5 N
};

// Q_k = H(k/N, .) o H((k-1)/N, .)^{-1} sampled on `lattice`. The composition
// check uses the bilinear interpolants, i.e. the maps the schedule realizes.
// Errors: kNewtonDivergence, kInvalidArgument for N < 1.
Fragments fragment_isotopy(const IsotopyPath& path, int n_fragments, const NodeLattice& lattice);

// Q_N o ... o Q_1 (bilinear interpolants) applied to each point.
std::vector<Vec2> compose_tables(const std::vector<MapTable>& maps, const std::vector<Vec2>& points);

}  // namespace liouville
