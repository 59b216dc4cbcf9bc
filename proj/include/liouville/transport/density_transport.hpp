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

#include <vector>

#include "liouville/core/grid.hpp"
#include "liouville/core/schedule.hpp"
#include "liouville/core/vector_field_family.hpp"
#include "liouville/flow/flow_engine.hpp"

namespace liouville {

struct PushforwardResult {
  GridDensity density;        // renormalized to unit mass
  double mass_before = 1.0;   // mass of the raw change-of-variables values
  double min_det = 1.0;       // smallest det D Phi^t over the pre-images
  // Renormalization factor applied (1 / mass_before).
  double mass_drift() const { return 1.0 / mass_before; }
};

struct PushforwardOptions {
  double max_mass_drift = 1e-2;
};

// rho_t(x) = rho_0(z) / det D Phi^t(z) with z = Phi^{-t}(x), evaluated at
// every cell center of rho0's grid, then renormalized.
// Errors: kOrientationLoss and kBlowUp from the flow; kExcessiveMassDrift if
// |mass_drift - 1| exceeds the option.
PushforwardResult pushforward_density(const GridDensity& rho0, const FeedbackSchedule& schedule,
                                      const VectorFieldFamily& family, double t,
                                      const FlowOptions& flow,
                                      const PushforwardOptions& options = {});

// Each point mapped by Phi^t; weights unchanged.
WeightedPoints pushforward_particles(const WeightedPoints& samples,
                                     const FeedbackSchedule& schedule,
                                     const VectorFieldFamily& family, double t,
                                     const FlowOptions& flow);

struct DensitySeries {
  std::vector<double> times;
  std::vector<GridDensity> frames;
};

// Frames of pushforward_density at each requested time.
DensitySeries simulate_series(const GridDensity& rho0, const FeedbackSchedule& schedule,
                              const VectorFieldFamily& family, const std::vector<double>& times,
                              const FlowOptions& flow);

// max over interior cells and interior times of
//   |d_t rho + div(rho sum_i v_i f_i)|
// with central differences in t and x. Times must be uniformly spaced.
// Errors: kGridMismatch (grids differ or fewer than three frames),
// kInvalidArgument (non-uniform times).
double continuity_residual(const DensitySeries& series, const FeedbackSchedule& schedule,
                           const VectorFieldFamily& family);

// Draws n points from the piecewise-constant density of the grid (cell by
// inverse CDF, then uniform inside the cell), weights 1/n.
WeightedPoints sample_particles(const GridDensity& density, int n, unsigned long long seed);

}  // namespace liouville
