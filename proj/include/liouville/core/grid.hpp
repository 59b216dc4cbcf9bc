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

#include <span>
#include <vector>

#include "liouville/core/domain.hpp"
#include "liouville/core/types.hpp"

namespace liouville {

// Sum with a fixed binary reduction tree, so the result does not depend on how
// callers partition work.
double pairwise_sum(std::span<const double> values);

// Cell-centered tensor grid on a Domain. Index (i, j) is column i (x) and
// row j (y); storage is row-major with y outermost.
class CellGrid {
 public:
  CellGrid(Domain domain, int nx, int ny);

  const Domain& domain() const { return domain_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int size() const { return nx_ * ny_; }
  double dx() const { return domain_.width() / nx_; }
  double dy() const { return domain_.height() / ny_; }
  double cell_area() const { return dx() * dy(); }
  int index(int i, int j) const { return j * nx_ + i; }
  Vec2 center(int i, int j) const;
  Vec2 center(int k) const { return center(k % nx_, k / nx_); }

  friend bool operator==(const CellGrid& a, const CellGrid& b) {
    return a.domain_ == b.domain_ && a.nx_ == b.nx_ && a.ny_ == b.ny_;
  }

 private:
  Domain domain_;
  int nx_;
  int ny_;
};

// Signed cell-centered scalar field (Poisson sources and potentials).
struct CellField {
  CellGrid grid;
  std::vector<double> values;

  CellField(CellGrid g, std::vector<double> v);
  CellField(CellGrid g, double fill) : CellField(g, std::vector<double>(g.size(), fill)) {}

  double& at(int i, int j) { return values[grid.index(i, j)]; }
  double at(int i, int j) const { return values[grid.index(i, j)]; }
  // Integral of the field (pairwise sum times cell area).
  double integral() const;
};

// Nonnegative cell-centered density. Construction only checks shape; use
// validate_density to enforce the sign and mass invariants.
class GridDensity {
 public:
  GridDensity(CellGrid grid, std::vector<double> values);

  template <typename F>
  static GridDensity from_function(const CellGrid& grid, F&& rho) {
    std::vector<double> v(grid.size());
    for (int j = 0; j < grid.ny(); ++j)
      for (int i = 0; i < grid.nx(); ++i) v[grid.index(i, j)] = rho(grid.center(i, j));
    return GridDensity(grid, std::move(v));
  }

  const CellGrid& grid() const { return grid_; }
  const Domain& domain() const { return grid_.domain(); }
  int nx() const { return grid_.nx(); }
  int ny() const { return grid_.ny(); }
  int size() const { return grid_.size(); }
  double cell_area() const { return grid_.cell_area(); }

  std::span<const double> values() const { return values_; }
  double at(int i, int j) const { return values_[grid_.index(i, j)]; }
  double at(int k) const { return values_[k]; }

  double mass() const;
  double min_value() const;
  double max_value() const;

  friend bool operator==(const GridDensity& a, const GridDensity& b) {
    return a.grid_ == b.grid_ && a.values_ == b.values_;
  }

 private:
  CellGrid grid_;
  std::vector<double> values_;
};

// Checks values are finite and nonnegative, then rescales to unit mass.
// A density whose mass is already 1 to within 1e-14 is returned unchanged, so
// the operation is idempotent bit for bit.
// Errors: kNonFinite, kNegativeDensity (negative cell, or any cell <= 0 when
// require_positive), kZeroMass.
GridDensity validate_density(const GridDensity& d, bool require_positive);

// Bilinear interpolation of the cell values. Queries outside the hull of the
// cell centers are clamped onto it, so the density is constant-extended
// across the outer half cell and beyond.
double sample_density(const GridDensity& d, const Vec2& x);

// Value and spatial gradient of the same interpolant (zero normal gradient in
// the clamped region).
double sample_density(const GridDensity& d, const Vec2& x, Vec2* gradient);

// Merge k-by-k blocks of cells into one (mass preserving). nx and ny must be
// divisible by k.
GridDensity coarsen(const GridDensity& d, int k);

struct WeightedPoints {
  std::vector<Vec2> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
  double total_weight() const;
};

// Cell centers with weight value * cell area.
WeightedPoints to_weighted_points(const GridDensity& d);

}  // namespace liouville
