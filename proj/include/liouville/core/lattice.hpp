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

#include <functional>
#include <vector>

#include "liouville/core/domain.hpp"
#include "liouville/core/grid.hpp"
#include "liouville/core/types.hpp"

namespace liouville {

// Regular node lattice: node (i, j) sits at origin + (i dx, j dy).
struct NodeLattice {
  Vec2 origin = Vec2::Zero();
  double dx = 1.0;
  double dy = 1.0;
  int nx = 1;
  int ny = 1;

  int size() const { return nx * ny; }
  int index(int i, int j) const { return j * nx + i; }
  Vec2 node(int i, int j) const { return origin + Vec2(i * dx, j * dy); }
  Vec2 node(int k) const { return node(k % nx, k / nx); }

  // Corners of the cells of `grid`, i.e. (nx+1) x (ny+1) nodes covering the
  // closed domain.
  static NodeLattice vertices(const CellGrid& grid);
  // One node per cell center.
  static NodeLattice centers(const CellGrid& grid);

  friend bool operator==(const NodeLattice& a, const NodeLattice& b) {
    return a.origin == b.origin && a.dx == b.dx && a.dy == b.dy && a.nx == b.nx &&
           a.ny == b.ny;
  }
};

enum class Extension {
  kClamp,   // constant beyond the outermost nodes
  kLinear,  // the boundary cell's bilinear formula continued outward
};

// Cell of a lattice containing a point, with local coordinates. Local
// coordinates leave [0, 1] only when extrapolating.
struct LatticeCell {
  int i = 0;
  int j = 0;
  double p = 0.0;
  double q = 0.0;
  // d p / d x and d q / d y; zero along a clamped or degenerate axis.
  double dp_dx = 0.0;
  double dq_dy = 0.0;
};

LatticeCell locate(const NodeLattice& lattice, const Vec2& x, Extension ext_x, Extension ext_y);

// Scalar samples on a node lattice with bilinear interpolation.
class ScalarTable {
 public:
  ScalarTable() = default;
  ScalarTable(NodeLattice lattice, std::vector<double> values);

  const NodeLattice& lattice() const { return lattice_; }
  const std::vector<double>& values() const { return values_; }
  double at(int i, int j) const { return values_[lattice_.index(i, j)]; }

  double value(const Vec2& x, Extension ext) const { return value(x, ext, ext, nullptr); }
  double value(const Vec2& x, Extension ext, Vec2* gradient) const {
    return value(x, ext, ext, gradient);
  }
  double value(const Vec2& x, Extension ext_x, Extension ext_y, Vec2* gradient) const;

 private:
  NodeLattice lattice_;
  std::vector<double> values_;
};

// A sampled planar map; both components interpolated bilinearly and extended
// linearly outside the lattice.
class MapTable {
 public:
  MapTable() = default;
  MapTable(NodeLattice lattice, std::vector<double> tx, std::vector<double> ty);

  static MapTable identity(const NodeLattice& lattice);
  static MapTable from_function(const NodeLattice& lattice,
                                const std::function<Vec2(const Vec2&)>& f);

  const NodeLattice& lattice() const { return x_.lattice(); }
  const ScalarTable& x_component() const { return x_; }
  const ScalarTable& y_component() const { return y_; }
  Vec2 at(int i, int j) const { return Vec2(x_.at(i, j), y_.at(i, j)); }
  Vec2 at(int k) const { return Vec2(x_.values()[k], y_.values()[k]); }

  Vec2 evaluate(const Vec2& p) const;
  Mat2 jacobian(const Vec2& p) const;

  // Jacobian of cell (ci, cj)'s bilinear formula evaluated at the cell corner
  // (ci + a, cj + b), a, b in {0, 1}.
  Mat2 corner_jacobian(int ci, int cj, int a, int b) const;

  // max over nodes of |T(x) - x|.
  double max_displacement() const;

 private:
  ScalarTable x_;
  ScalarTable y_;
};

}  // namespace liouville
