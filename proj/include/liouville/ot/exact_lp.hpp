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

#include "liouville/core/grid.hpp"
#include "liouville/ot/transport_plan.hpp"

namespace liouville {

struct ExactSolverOptions {
  int max_points = 512;
  double weight_tolerance = 1e-9;
};

// Exact discrete Kantorovich problem with squared-Euclidean cost, solved by
// the transportation simplex (spanning-tree basis, block pricing).
// Errors: kSizeExceeded, kWeightMismatch, kNonConvergence (pivot cap).
TransportPlan solve_plan_exact(const WeightedPoints& mu, const WeightedPoints& nu,
                               const ExactSolverOptions& options = {});

}  // namespace liouville
