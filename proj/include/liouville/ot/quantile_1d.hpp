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

namespace liouville {

struct QuantileMap1D {
  std::vector<double> centers;  // source cell centers
  std::vector<double> map;      // T(center)
  double cost = 0.0;            // int |T(x) - x|^2 d mu(x)
};

// Monotone rearrangement T = G^{-1} o F between two piecewise-constant
// densities given by cell values on [lower, upper] (cell counts may differ).
// F and G are the piecewise-linear CDFs; T is piecewise linear in x, so the
// cost integral is evaluated exactly piece by piece.
// Errors: kNonPositive1D for a value <= 0 or a non-finite value,
// kInvalidArgument for an empty input or an empty interval.
QuantileMap1D quantile_map_1d(double lower, double upper, std::span<const double> mu,
                              std::span<const double> nu);

// T itself at an arbitrary x in [lower, upper].
double quantile_map_eval(double lower, double upper, std::span<const double> mu,
                         std::span<const double> nu, double x);

}  // namespace liouville
