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

#include "liouville/core/grid.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/core/error.hpp"

namespace liouville {

Domain::Domain(Vec2 lower, Vec2 upper) : lower_(lower), upper_(upper) {
  if (!(upper.x() > lower.x() && upper.y() > lower.y()) || !lower.allFinite() ||
      !upper.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "domain upper corner must exceed lower corner");
  }
}

bool Domain::contains(const Vec2& p) const {
  return p.x() > lower_.x() && p.x() < upper_.x() && p.y() > lower_.y() && p.y() < upper_.y();
}

bool Domain::contains_closure(const Vec2& p) const {
  return p.x() >= lower_.x() && p.x() <= upper_.x() && p.y() >= lower_.y() && p.y() <= upper_.y();
}

Vec2 Domain::clamp(const Vec2& p) const { return p.cwiseMax(lower_).cwiseMin(upper_); }

Domain Domain::inflated(double fraction) const {
  const Vec2 pad(fraction * width(), fraction * height());
  return Domain(lower_ - pad, upper_ + pad);
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

CellGrid::CellGrid(Domain domain, int nx, int ny) : domain_(domain), nx_(nx), ny_(ny) {
  if (nx <= 0 || ny <= 0) throw Error(ErrorCode::kInvalidArgument, "grid resolution must be positive");
}

Vec2 CellGrid::center(int i, int j) const {
  return Vec2(domain_.lower().x() + (i + 0.5) * dx(), domain_.lower().y() + (j + 0.5) * dy());
}

CellField::CellField(CellGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid.size())
    throw Error(ErrorCode::kInvalidArgument, "field size does not match grid");
}

double CellField::integral() const { return pairwise_sum(values) * grid.cell_area(); }

GridDensity::GridDensity(CellGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.size())
    throw Error(ErrorCode::kInvalidArgument, "density size does not match grid");
}

double GridDensity::mass() const { return pairwise_sum(values_) * cell_area(); }

double GridDensity::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

double GridDensity::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

GridDensity validate_density(const GridDensity& d, bool require_positive) {
  for (double v : d.values()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "density has a non-finite value");
  }
  for (double v : d.values()) {
    if (v < 0.0) throw Error(ErrorCode::kNegativeDensity, "density has a negative value");
    if (require_positive && v <= 0.0)
      throw Error(ErrorCode::kNegativeDensity, "density is not strictly positive");
  }
  const double mass = d.mass();
  if (!(mass > 0.0)) throw Error(ErrorCode::kZeroMass, "density has zero mass");
  if (std::abs(mass - 1.0) <= 1e-14) return d;
  std::vector<double> v(d.values().begin(), d.values().end());
  const double scale = 1.0 / mass;
  for (double& x : v) x *= scale;
  return GridDensity(d.grid(), std::move(v));
}

namespace {

// Local coordinate along one axis of the cell-center lattice, clamped to the
// hull of the centers. Values within 1e-12 of a node snap onto it, so
// queries at cell centers reproduce the stored value exactly.
struct AxisWeight {
  int lo = 0;
  int hi = 0;
  double t = 0.0;
  double dt_dx = 0.0;
};

AxisWeight axis_weight(double x, double lower, double h, int n) {
  AxisWeight w;
  if (n == 1) return w;
  double f = (x - lower) / h - 0.5;
  if (f <= 0.0) return w;
  if (f >= n - 1) {
    w.lo = w.hi = n - 1;
    return w;
  }
  const double r = std::round(f);
  if (std::abs(f - r) < 1e-12) f = r;
  w.lo = std::min(static_cast<int>(std::floor(f)), n - 2);
  w.hi = w.lo + 1;
  w.t = f - w.lo;
  w.dt_dx = 1.0 / h;
  return w;
}

}  // namespace

double sample_density(const GridDensity& d, const Vec2& x, Vec2* gradient) {
  const CellGrid& g = d.grid();
  const AxisWeight wx = axis_weight(x.x(), g.domain().lower().x(), g.dx(), g.nx());
  const AxisWeight wy = axis_weight(x.y(), g.domain().lower().y(), g.dy(), g.ny());
  const double v00 = d.at(wx.lo, wy.lo);
  const double v10 = d.at(wx.hi, wy.lo);
  const double v01 = d.at(wx.lo, wy.hi);
  const double v11 = d.at(wx.hi, wy.hi);
  const double a = v00 + wx.t * (v10 - v00);
  const double b = v01 + wx.t * (v11 - v01);
  if (gradient) {
    const double dxa = (v10 - v00) * wx.dt_dx;
    const double dxb = (v11 - v01) * wx.dt_dx;
    (*gradient)(0) = dxa + wy.t * (dxb - dxa);
    (*gradient)(1) = (b - a) * wy.dt_dx;
  }
  return a + wy.t * (b - a);
}

double sample_density(const GridDensity& d, const Vec2& x) { return sample_density(d, x, nullptr); }

GridDensity coarsen(const GridDensity& d, int k) {
  if (k < 1 || d.nx() % k != 0 || d.ny() % k != 0)
    throw Error(ErrorCode::kInvalidArgument, "coarsening factor must divide the resolution");
  if (k == 1) return d;
  const CellGrid coarse(d.domain(), d.nx() / k, d.ny() / k);
  std::vector<double> v(coarse.size());
  std::vector<double> block(k * k);
  for (int J = 0; J < coarse.ny(); ++J) {
    for (int I = 0; I < coarse.nx(); ++I) {
      int n = 0;
      for (int b = 0; b < k; ++b)
        for (int a = 0; a < k; ++a) block[n++] = d.at(I * k + a, J * k + b);
      v[coarse.index(I, J)] = pairwise_sum(block) / (k * k);
    }
  }
  return GridDensity(coarse, std::move(v));
}

double WeightedPoints::total_weight() const { return pairwise_sum(weights); }

WeightedPoints to_weighted_points(const GridDensity& d) {
  WeightedPoints out;
  out.points.reserve(d.size());
  out.weights.reserve(d.size());
  for (int k = 0; k < d.size(); ++k) {
    out.points.push_back(d.grid().center(k));
    out.weights.push_back(d.at(k) * d.cell_area());
  }
  return out;
}

}  // namespace liouville
