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
#include <span>
#include <vector>

#include "liouville/core/grid.hpp"
#include "liouville/core/types.hpp"

namespace liouville {

// Squared-Euclidean cost between a source and a target point set, applied in
// the log domain. For potentials p (rows) and h (columns) the Gibbs coupling
// is  gamma_ij = exp((p_i + h_j - C_ij) / eps).
class LogKernel {
 public:
  struct RowStats {
    double log_mass = 0.0;  // log sum_j gamma_ij
    Vec2 mean = Vec2::Zero();  // sum_j gamma_ij y_j / sum_j gamma_ij
    double cost = 0.0;      // sum_j gamma_ij C_ij / sum_j gamma_ij
  };

  virtual ~LogKernel() = default;

  virtual int rows() const = 0;
  virtual int cols() const = 0;
  virtual Vec2 source_point(int i) const = 0;
  virtual Vec2 target_point(int j) const = 0;
  double cost(int i, int j) const { return (source_point(i) - target_point(j)).squaredNorm(); }

  // out_i = -eps log sum_j exp((h_j - C_ij) / eps)
  virtual void softmin_rows(std::span<const double> h, double eps, std::span<double> out) const = 0;
  // out_j = -eps log sum_i exp((p_i - C_ij) / eps)
  virtual void softmin_cols(std::span<const double> p, double eps, std::span<double> out) const = 0;

  virtual void row_stats(std::span<const double> p, std::span<const double> h, double eps,
                         std::span<RowStats> out) const = 0;
};

// Explicit cost matrix between arbitrary point sets.
std::shared_ptr<const LogKernel> make_dense_kernel(std::vector<Vec2> source,
                                                   std::vector<Vec2> target);

// Separable kernel between the cell centers of two tensor grids; one
// application costs O(n^3) for n x n grids instead of O(n^4).
std::shared_ptr<const LogKernel> make_grid_kernel(const CellGrid& source, const CellGrid& target);

// log sum_k exp(v_k), with -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> v);

}  // namespace liouville
