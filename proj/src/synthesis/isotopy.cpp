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

#include "liouville/synthesis/isotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liouville/core/error.hpp"
#include "liouville/core/parallel.hpp"

namespace liouville {

Vec2 IsotopyPath::invert(double t, const Vec2& y) const {
  Vec2 z = y;
  Vec2 r = evaluate(t, z) - y;
  for (int it = 0; it < 20; ++it) {
    const Mat2 j = jacobian(t, z);
    const double det = j.determinant();
    if (!(det > 0.0) || !std::isfinite(det))
      throw Error(ErrorCode::kNewtonDivergence, "isotopy Jacobian is singular during inversion");
    const Vec2 step = j.inverse() * r;
    // Backtrack until the residual decreases.
    double lambda = 1.0;
    Vec2 z_next = z - step;
    Vec2 r_next = evaluate(t, z_next) - y;
    for (int b = 0; b < 30 && r_next.norm() > r.norm() && r.norm() > 0.0; ++b) {
      lambda *= 0.5;
      z_next = z - lambda * step;
      r_next = evaluate(t, z_next) - y;
    }
    z = z_next;
    r = r_next;
    if ((lambda * step).norm() <= 1e-10) return z;
  }
  if (r.norm() <= 1e-10) return z;
  throw Error(ErrorCode::kNewtonDivergence, "isotopy inversion did not converge in 20 iterations");
}

Vec2 IsotopyPath::transition(double t0, double t1, const Vec2& y) const {
  return evaluate(t1, invert(t0, y));
}

DisplacementIsotopy::DisplacementIsotopy(MapTable target) : target_(std::move(target)) {}

Vec2 DisplacementIsotopy::evaluate(double t, const Vec2& x) const {
  if (t == 0.0) return x;
  return (1.0 - t) * x + t * target_.evaluate(x);
}

Mat2 DisplacementIsotopy::jacobian(double t, const Vec2& x) const {
  if (t == 0.0) return Mat2::Identity();
  return (1.0 - t) * Mat2::Identity() + t * target_.jacobian(x);
}

std::shared_ptr<const DisplacementIsotopy> displacement_isotopy(const MapTable& target,
                                                                int probe_times, FoldScan* scan) {
  if (probe_times < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two probe times");
  const NodeLattice& l = target.lattice();
  double min_det = std::numeric_limits<double>::infinity();
  for (int m = 0; m < probe_times; ++m) {
    const double t = static_cast<double>(m) / (probe_times - 1);
    for (int cj = 0; cj + 1 < l.ny; ++cj) {
      for (int ci = 0; ci + 1 < l.nx; ++ci) {
        for (int c = 0; c < 4; ++c) {
          const Mat2 j = (1.0 - t) * Mat2::Identity() + t * target.corner_jacobian(ci, cj, c & 1, c >> 1);
          const double det = j.determinant();
          min_det = std::min(min_det, det);
          if (!(det > 0.0))
            throw Error(ErrorCode::kFoldOver,
                        "displacement interpolation folds at t = " + std::to_string(t) +
                            ", cell (" + std::to_string(ci) + ", " + std::to_string(cj) + ")");
        }
      }
    }
  }
  if (scan) *scan = FoldScan{min_det, probe_times};
  return std::make_shared<const DisplacementIsotopy>(target);
}

Fragments fragment_isotopy(const IsotopyPath& path, int n_fragments, const NodeLattice& lattice) {
  if (n_fragments < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one fragment");
  Fragments out;
  const int n = lattice.size();
  for (int k = 1; k <= n_fragments; ++k) {
    const double t0 = static_cast<double>(k - 1) / n_fragments;
    const double t1 = static_cast<double>(k) / n_fragments;
    std::vector<double> tx(n), ty(n);
    parallel_for(n, [&](std::int64_t i) {
      const Vec2 x = lattice.node(static_cast<int>(i));
      const Vec2 q = path.transition(t0, t1, x);
      tx[i] = q.x();
      ty[i] = q.y();
    });
    out.maps.emplace_back(lattice, std::move(tx), std::move(ty));
    out.max_displacement = std::max(out.max_displacement, out.maps.back().max_displacement());
  }
  std::vector<Vec2> nodes(n);
  for (int i = 0; i < n; ++i) nodes[i] = lattice.node(i);
  const std::vector<Vec2> composed = compose_tables(out.maps, nodes);
  std::vector<double> err(n);
  parallel_for(n, [&](std::int64_t i) { err[i] = (composed[i] - path.evaluate(1.0, nodes[i])).norm(); });
  out.composition_error = *std::max_element(err.begin(), err.end());
  out.composition_tolerance = 1e-5 * n_fragments;
  return out;
}

std::vector<Vec2> compose_tables(const std::vector<MapTable>& maps,
                                 const std::vector<Vec2>& points) {
  std::vector<Vec2> out = points;
  for (const MapTable& m : maps)
    for (Vec2& p : out) p = m.evaluate(p);
  return out;
}

}  // namespace liouville
