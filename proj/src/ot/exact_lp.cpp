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

#include "liouville/ot/exact_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liouville/core/error.hpp"

namespace liouville {

namespace {

struct Basic {
  int i;
  int j;
  double x;
};

// Transportation simplex on an m x n problem. Tree nodes are rows 0..m-1 and
// columns m..m+n-1; basic cells are the tree edges.
class TransportationSimplex {
 public:
  TransportationSimplex(const std::vector<double>& a, const std::vector<double>& b,
                        std::vector<double> cost)
      : m_(static_cast<int>(a.size())), n_(static_cast<int>(b.size())), cost_(std::move(cost)),
        adj_(m_ + n_), parent_edge_(m_ + n_), depth_(m_ + n_), pot_(m_ + n_) {
    northwest_corner(a, b);
  }

  void solve() {
    const double cmax = *std::max_element(cost_.begin(), cost_.end());
    const double tol = 1e-12 * (1.0 + cmax);
    const long long cap = 50LL * (m_ + n_) * (m_ + n_) + 1000;
    int start_row = 0;
    for (long long it = 0;; ++it) {
      if (it > cap) throw Error(ErrorCode::kNonConvergence, "transportation simplex hit pivot cap");
      build_tree();
      int ei = -1, ej = -1;
      if (!price(tol, &start_row, &ei, &ej)) return;
      pivot(ei, ej);
    }
  }

  std::vector<PlanEntry> entries() const {
    std::vector<PlanEntry> out;
    for (const Basic& e : basis_)
      if (e.x > 0.0) out.push_back(PlanEntry{e.i, e.j, e.x});
    return out;
  }

 private:
  double c(int i, int j) const { return cost_[static_cast<std::size_t>(i) * n_ + j]; }

  void add_edge(int i, int j, double x) {
    const int id = static_cast<int>(basis_.size());
    basis_.push_back(Basic{i, j, x});
    adj_[i].push_back(id);
    adj_[m_ + j].push_back(id);
  }

  void northwest_corner(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> ra = a, rb = b;
    int i = 0, j = 0;
    while (i < m_ && j < n_) {
      const double x = std::max(std::min(ra[i], rb[j]), 0.0);
      add_edge(i, j, x);
      ra[i] -= x;
      rb[j] -= x;
      if (i == m_ - 1) ++j;
      else if (j == n_ - 1) ++i;
      else if (ra[i] <= rb[j]) ++i;
      else ++j;
    }
  }

  int other(int edge, int node) const {
    const Basic& e = basis_[edge];
    return node < m_ ? m_ + e.j : e.i;
  }

  // Parent pointers, depths and dual potentials (u_0 = 0, c_ij = u_i + v_j).
  void build_tree() {
    std::fill(parent_edge_.begin(), parent_edge_.end(), -2);
    std::vector<int> queue{0};
    queue.reserve(m_ + n_);
    parent_edge_[0] = -1;
    depth_[0] = 0;
    pot_[0] = 0.0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const int u = queue[q];
      for (int e : adj_[u]) {
        const int v = other(e, u);
        if (parent_edge_[v] != -2) continue;
        parent_edge_[v] = e;
        depth_[v] = depth_[u] + 1;
        pot_[v] = c(basis_[e].i, basis_[e].j) - pot_[u];
        queue.push_back(v);
      }
    }
  }

  // Block pricing: scan groups of rows starting after the last entering row,
  // take the most negative reduced cost of the first block that has one.
  bool price(double tol, int* start_row, int* ei, int* ej) const {
    const int block = std::max(1, std::min(m_, 32));
    double best = -tol;
    for (int scanned = 0; scanned < m_;) {
      for (int b = 0; b < block && scanned < m_; ++b, ++scanned) {
        const int i = (*start_row + scanned) % m_;
        for (int j = 0; j < n_; ++j) {
          const double r = c(i, j) - pot_[i] - pot_[m_ + j];
          if (r < best) {
            best = r;
            *ei = i;
            *ej = j;
          }
        }
      }
      if (*ei >= 0) {
        *start_row = (*ei + 1) % m_;
        return true;
      }
    }
    return false;
  }

  void pivot(int ei, int ej) {
    // Path in the tree from column node ej to row node ei.
    std::vector<int> from_col, from_row;
    int u = m_ + ej, v = ei;
    while (u != v) {
      if (depth_[u] >= depth_[v]) {
        from_col.push_back(parent_edge_[u]);
        u = other(parent_edge_[u], u);
      } else {
        from_row.push_back(parent_edge_[v]);
        v = other(parent_edge_[v], v);
      }
    }
    std::vector<int> path = from_col;
    path.insert(path.end(), from_row.rbegin(), from_row.rend());
    // Signs alternate starting with - next to the entering column.
    int leave = -1;
    double theta = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < path.size(); k += 2) {
      if (basis_[path[k]].x < theta) {
        theta = basis_[path[k]].x;
        leave = path[k];
      }
    }
    for (std::size_t k = 0; k < path.size(); ++k) {
      Basic& e = basis_[path[k]];
      e.x = k % 2 == 0 ? std::max(e.x - theta, 0.0) : e.x + theta;
    }
    basis_[leave].x = 0.0;
    // Replace the leaving edge by the entering one in place.
    const Basic old = basis_[leave];
    auto drop = [&](int node) {
      auto& list = adj_[node];
      list.erase(std::find(list.begin(), list.end(), leave));
    };
    drop(old.i);
    drop(m_ + old.j);
    basis_[leave] = Basic{ei, ej, theta};
    adj_[ei].push_back(leave);
    adj_[m_ + ej].push_back(leave);
  }

  int m_, n_;
  std::vector<double> cost_;
  std::vector<Basic> basis_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> parent_edge_;
  std::vector<int> depth_;
  std::vector<double> pot_;
};

}  // namespace

TransportPlan solve_plan_exact(const WeightedPoints& mu, const WeightedPoints& nu,
                               const ExactSolverOptions& options) {
  if (mu.size() > options.max_points || nu.size() > options.max_points)
    throw Error(ErrorCode::kSizeExceeded, "exact solver is limited to " +
                                              std::to_string(options.max_points) + " points");
  if (mu.size() == 0 || nu.size() == 0)
    throw Error(ErrorCode::kInvalidArgument, "exact solver needs nonempty measures");
  for (const WeightedPoints* p : {&mu, &nu}) {
    for (double w : p->weights)
      if (!(w >= 0.0) || !std::isfinite(w))
        throw Error(ErrorCode::kWeightMismatch, "weights must be finite and nonnegative");
    if (std::abs(p->total_weight() - 1.0) > options.weight_tolerance)
      throw Error(ErrorCode::kWeightMismatch, "weights must sum to 1");
  }
  std::vector<double> cost(static_cast<std::size_t>(mu.size()) * nu.size());
  for (int i = 0; i < mu.size(); ++i)
    for (int j = 0; j < nu.size(); ++j)
      cost[static_cast<std::size_t>(i) * nu.size() + j] = (mu.points[i] - nu.points[j]).squaredNorm();
  TransportationSimplex lp(mu.weights, nu.weights, std::move(cost));
  lp.solve();
  return TransportPlan::from_entries(mu, nu, lp.entries());
}

}  // namespace liouville
