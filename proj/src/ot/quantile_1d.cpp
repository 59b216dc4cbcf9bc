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

#include "liouville/ot/quantile_1d.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/core/error.hpp"

namespace liouville {

namespace {

// Piecewise-linear CDF of a piecewise-constant density, normalized to 1.
class Cdf {
 public:
  Cdf(double lower, double upper, std::span<const double> v) : lower_(lower) {
    if (v.empty()) throw Error(ErrorCode::kInvalidArgument, "empty 1D density");
    h_ = (upper - lower) / static_cast<double>(v.size());
    cum_.assign(v.size() + 1, 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!(v[k] > 0.0) || !std::isfinite(v[k]))
        throw Error(ErrorCode::kNonPositive1D, "1D density must be finite and positive");
      cum_[k + 1] = cum_[k] + v[k] * h_;
    }
    const double total = cum_.back();
    for (double& c : cum_) c /= total;
    cum_.back() = 1.0;
  }

  int cells() const { return static_cast<int>(cum_.size()) - 1; }
  double edge(int k) const { return lower_ + k * h_; }
  double knot(int k) const { return cum_[k]; }

  double value(double x) const {
    const double f = (x - lower_) / h_;
    if (f <= 0.0) return 0.0;
    if (f >= cells()) return 1.0;
    const int k = std::min(static_cast<int>(f), cells() - 1);
    return cum_[k] + (f - k) * (cum_[k + 1] - cum_[k]);
  }

  double inverse(double q) const {
    if (q <= 0.0) return edge(0);
    if (q >= 1.0) return edge(cells());
    return inverse_in_cell(q, cell_of(q));
  }

  // Cell k with cum_k <= q < cum_{k+1}; cells that rounding made empty are
  // never returned.
  int cell_of(double q) const {
    const int k =
        static_cast<int>(std::upper_bound(cum_.begin(), cum_.end(), q) - cum_.begin()) - 1;
    if (k >= cells()) {
      int last = cells() - 1;
      while (last > 0 && !(cum_[last + 1] > cum_[last])) --last;
      return last;
    }
    return std::max(k, 0);
  }

  // The linear branch of the inverse over cell k, evaluated at q.
  double inverse_in_cell(double q, int k) const {
    return edge(k) + h_ * (q - cum_[k]) / (cum_[k + 1] - cum_[k]);
  }

 private:
  double lower_;
  double h_;
  std::vector<double> cum_;
};

void check_interval(double lower, double upper) {
  if (!(upper > lower)) throw Error(ErrorCode::kInvalidArgument, "empty 1D interval");
}

}  // namespace

QuantileMap1D quantile_map_1d(double lower, double upper, std::span<const double> mu,
                              std::span<const double> nu) {
  check_interval(lower, upper);
  const Cdf f(lower, upper, mu), g(lower, upper, nu);
  QuantileMap1D out;
  for (int k = 0; k < f.cells(); ++k) {
    const double x = lower + (k + 0.5) * (upper - lower) / f.cells();
    out.centers.push_back(x);
    out.map.push_back(g.inverse(f.value(x)));
  }
  // T is linear between consecutive quantile levels of either CDF's knots.
  std::vector<double> q;
  for (int k = 0; k <= f.cells(); ++k) q.push_back(f.knot(k));
  for (int k = 0; k <= g.cells(); ++k) q.push_back(g.knot(k));
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  double cost = 0.0;
  for (std::size_t k = 0; k + 1 < q.size(); ++k) {
    // Both inverses are linear on the interval; take the branch holding its
    // midpoint so that rounding-level flat spots in a CDF cannot switch
    // branches at an endpoint.
    const double mid = 0.5 * (q[k] + q[k + 1]);
    const int cf = f.cell_of(mid), cg = g.cell_of(mid);
    const double d0 = g.inverse_in_cell(q[k], cg) - f.inverse_in_cell(q[k], cf);
    const double d1 = g.inverse_in_cell(q[k + 1], cg) - f.inverse_in_cell(q[k + 1], cf);
    cost += (q[k + 1] - q[k]) * (d0 * d0 + d0 * d1 + d1 * d1) / 3.0;
  }
  out.cost = cost;
  return out;
}

double quantile_map_eval(double lower, double upper, std::span<const double> mu,
                         std::span<const double> nu, double x) {
  check_interval(lower, upper);
  const Cdf f(lower, upper, mu), g(lower, upper, nu);
  return g.inverse(f.value(x));
}

}  // namespace liouville
