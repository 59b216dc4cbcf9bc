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
#include <vector>

#include "liouville/core/grid.hpp"
#include "liouville/ot/log_kernel.hpp"
#include "liouville/ot/transport_plan.hpp"

namespace liouville {

struct SinkhornOptions {
  double eps = 0.0;            // target; <= 0 selects 1e-3 * diam^2
  double tolerance = 1e-7;     // final marginal violation (L1)
  double level_tolerance = 1e-6;  // marginal violation on intermediate levels
  int max_iterations = 100000;    // over all levels
};

struct SinkhornLevel {
  double eps = 0.0;
  int iterations = 0;
  double marginal_violation = 0.0;
  double transport_cost = 0.0;
  double entropic_cost = 0.0;
};

struct SinkhornResult {
  TransportPlan plan;
  double eps = 0.0;
  int iterations = 0;
  double marginal_violation = 0.0;
  bool converged = false;  // false: best iterate, see marginal_violation
  double transport_cost = 0.0;  // <C, gamma>
  double entropic_cost = 0.0;   // dual objective <f, a> + <g, b>
  std::vector<SinkhornLevel> ladder;
};

// Log-domain Sinkhorn with eps-scaling: eps0 = diameter^2 / 8 halved until the
// target. Zero weights are allowed (those points carry no mass).
SinkhornResult solve_sinkhorn(std::shared_ptr<const LogKernel> kernel, WeightedPoints source,
                              WeightedPoints target, double diameter,
                              const SinkhornOptions& options);

// Grid version with a separable kernel. Both densities must be validated and
// strictly positive (kNegativeDensity otherwise).
SinkhornResult solve_plan_sinkhorn(const GridDensity& mu, const GridDensity& nu,
                                   const SinkhornOptions& options = {});

double default_sinkhorn_eps(const Domain& domain);

// Debiased entropic divergence S = OT(a,b) - OT(a,a)/2 - OT(b,b)/2 of the
// dual objectives; nonnegative up to convergence error, zero for a == b.
struct DivergenceResult {
  double divergence = 0.0;
  double w2_estimate = 0.0;  // sqrt(max(divergence, 0))
  bool converged = false;
  int iterations = 0;
};

DivergenceResult sinkhorn_divergence(const GridDensity& a, const GridDensity& b,
                                     const SinkhornOptions& options = {});
DivergenceResult sinkhorn_divergence(const WeightedPoints& a, const WeightedPoints& b,
                                     double diameter, const SinkhornOptions& options = {});

}  // namespace liouville
