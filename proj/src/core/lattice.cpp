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

#include "liouville/core/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/core/error.hpp"

namespace liouville {

NodeLattice NodeLattice::vertices(const CellGrid& grid) {
  return NodeLattice{grid.domain().lower(), grid.dx(), grid.dy(), grid.nx() + 1, grid.ny() + 1};
}

NodeLattice NodeLattice::centers(const CellGrid& grid) {
  return NodeLattice{grid.center(0, 0), grid.dx(), grid.dy(), grid.nx(), grid.ny()};
}

namespace {

void locate_axis(double x, double origin, double h, int n, Extension ext, int* cell, double* t,
                 double* dt) {
  if (n == 1) {
    *cell = 0;
    *t = 0.0;
    *dt = 0.0;
    return;
  }
  double f = (x - origin) / h;
  const double r = std::round(f);
  if (std::abs(f - r) < 1e-12) f = r;
  if (ext == Extension::kClamp && (f <= 0.0 || f >= n - 1)) {
    *cell = f <= 0.0 ? 0 : n - 2;
    *t = f <= 0.0 ? 0.0 : 1.0;
    *dt = 0.0;
    return;
  }
  const int c = std::clamp(static_cast<int>(std::floor(f)), 0, n - 2);
  *cell = c;
  *t = f - c;
  *dt = 1.0 / h;
}

}  // namespace

LatticeCell locate(const NodeLattice& lattice, const Vec2& x, Extension ext_x, Extension ext_y) {
  LatticeCell c;
  locate_axis(x.x(), lattice.origin.x(), lattice.dx, lattice.nx, ext_x, &c.i, &c.p, &c.dp_dx);
  locate_axis(x.y(), lattice.origin.y(), lattice.dy, lattice.ny, ext_y, &c.j, &c.q, &c.dq_dy);
  return c;
}

ScalarTable::ScalarTable(NodeLattice lattice, std::vector<double> values)
    : lattice_(lattice), values_(std::move(values)) {
  if (lattice_.nx < 1 || lattice_.ny < 1 || static_cast<int>(values_.size()) != lattice_.size())
    throw Error(ErrorCode::kInvalidArgument, "table size does not match lattice");
}

double ScalarTable::value(const Vec2& x, Extension ext_x, Extension ext_y, Vec2* gradient) const {
  const LatticeCell c = locate(lattice_, x, ext_x, ext_y);
  const int i1 = lattice_.nx > 1 ? c.i + 1 : c.i;
  const int j1 = lattice_.ny > 1 ? c.j + 1 : c.j;
  const double v00 = at(c.i, c.j);
  const double v10 = at(i1, c.j);
  const double v01 = at(c.i, j1);
  const double v11 = at(i1, j1);
  const double a = v00 + c.p * (v10 - v00);
  const double b = v01 + c.p * (v11 - v01);
  if (gradient) {
    const double da = v10 - v00;
    const double db = v11 - v01;
    (*gradient)(0) = (da + c.q * (db - da)) * c.dp_dx;
    (*gradient)(1) = (b - a) * c.dq_dy;
  }
  return a + c.q * (b - a);
}

MapTable::MapTable(NodeLattice lattice, std::vector<double> tx, std::vector<double> ty)
    : x_(lattice, std::move(tx)), y_(lattice, std::move(ty)) {}

MapTable MapTable::identity(const NodeLattice& lattice) {
  return from_function(lattice, [](const Vec2& p) { return p; });
}

MapTable MapTable::from_function(const NodeLattice& lattice,
                                 const std::function<Vec2(const Vec2&)>& f) {
  std::vector<double> tx(lattice.size()), ty(lattice.size());
  for (int k = 0; k < lattice.size(); ++k) {
    const Vec2 v = f(lattice.node(k));
    tx[k] = v.x();
    ty[k] = v.y();
  }
  return MapTable(lattice, std::move(tx), std::move(ty));
}

Vec2 MapTable::evaluate(const Vec2& p) const {
  return Vec2(x_.value(p, Extension::kLinear), y_.value(p, Extension::kLinear));
}

Mat2 MapTable::jacobian(const Vec2& p) const {
  Vec2 gx, gy;
  x_.value(p, Extension::kLinear, &gx);
  y_.value(p, Extension::kLinear, &gy);
  Mat2 j;
  j.row(0) = gx.transpose();
  j.row(1) = gy.transpose();
  return j;
}

Mat2 MapTable::corner_jacobian(int ci, int cj, int a, int b) const {
  const NodeLattice& l = lattice();
  auto d = [&](const ScalarTable& t) {
    const double v00 = t.at(ci, cj), v10 = t.at(ci + 1, cj);
    const double v01 = t.at(ci, cj + 1), v11 = t.at(ci + 1, cj + 1);
    const double ddx = (b == 0 ? v10 - v00 : v11 - v01) / l.dx;
    const double ddy = (a == 0 ? v01 - v00 : v11 - v10) / l.dy;
    return Vec2(ddx, ddy);
  };
  Mat2 j;
  j.row(0) = d(x_).transpose();
  j.row(1) = d(y_).transpose();
  return j;
}

double MapTable::max_displacement() const {
  double m = 0.0;
  for (int k = 0; k < lattice().size(); ++k) m = std::max(m, (at(k) - lattice().node(k)).norm());
  return m;
}

}  // namespace liouville
