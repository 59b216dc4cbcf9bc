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
#include <memory>
#include <vector>

#include "liouville/core/grid.hpp"
#include "liouville/ot/log_kernel.hpp"

namespace liouville {

struct PlanEntry {
  int i = 0;
  int j = 0;
  double mass = 0.0;
};

// Entropic coupling gamma_ij = exp((p_i + h_j - C_ij) / eps) held implicitly.
struct GibbsCoupling {
  std::shared_ptr<const LogKernel> kernel;
  std::vector<double> row_potential;  // p_i = f_i + eps log a_i
  std::vector<double> col_potential;  // h_j = g_j + eps log b_j
  double eps = 0.0;
};

// A discrete coupling between two weighted point sets, either as explicit
// sparse entries (exact solver) or as an implicit Gibbs coupling (Sinkhorn).
class TransportPlan {
 public:
  static TransportPlan from_entries(WeightedPoints source, WeightedPoints target,
                                    std::vector<PlanEntry> entries);
  static TransportPlan from_gibbs(WeightedPoints source, WeightedPoints target,
                                  GibbsCoupling coupling);

  const WeightedPoints& source() const { return source_; }
  const WeightedPoints& target() const { return target_; }
  bool is_explicit() const { return !gibbs_; }
  const std::vector<PlanEntry>& entries() const { return entries_; }

  // sum_ij gamma_ij |x_i - y_j|^2
  double cost() const { return cost_; }
  double w2() const;

  std::vector<double> row_sums() const;
  std::vector<double> col_sums() const;
  // max of the L1 deviations of row sums and column sums from the weights.
  double marginal_violation() const;

  // sum_j gamma_ij y_j / sum_j gamma_ij per source point; kEmptyRow if a
  // row carries no mass.
  std::vector<Vec2> row_means() const;

  // Visits entries with mass > threshold in (i, j) order.
  void for_each_entry(double threshold,
                      const std::function<void(int, int, double)>& visit) const;

 private:
  TransportPlan() = default;

  WeightedPoints source_;
  WeightedPoints target_;
  std::vector<PlanEntry> entries_;
  std::shared_ptr<const GibbsCoupling> gibbs_;
  double cost_ = 0.0;
};

}  // namespace liouville
