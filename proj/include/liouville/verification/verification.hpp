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

#include <cstdint>
#include <string>

#include <json.hpp>

#include "liouville/core/grid.hpp"
#include "liouville/core/schedule.hpp"
#include "liouville/core/vector_field_family.hpp"
#include "liouville/flow/flow_engine.hpp"
#include "liouville/ot/sinkhorn.hpp"

namespace liouville {

// sum |a - b| * cell area. Errors: kGridMismatch.
double l1_distance(const GridDensity& a, const GridDensity& b);

struct GridW2Estimate {
  double w2 = 0.0;
  double subsampling_error = 0.0;  // |estimate at block k - estimate at block 2k|
  int block = 1;                   // aggregation factor used
  int points = 0;
  bool converged = false;
};

// W2 between two densities on the same grid from the debiased Sinkhorn
// divergence. Grids larger than max_points cells are aggregated in k x k
// blocks (weights summed) for the smallest k that fits.
GridW2Estimate grid_w2(const GridDensity& a, const GridDensity& b, int max_points = 1024,
                       const SinkhornOptions& options = {});

struct SteeringReport {
  double l1_error = 0.0;
  GridW2Estimate w2;
  double mass_before = 1.0;  // pushed mass before renormalization
  double min_det = 1.0;
  double tol_l1 = 0.0;
  double tol_w2 = 0.0;
  bool pass = false;
};

// Pushes mu to time 1 and compares with nu.
SteeringReport verify_steering(const GridDensity& mu, const GridDensity& nu,
                               const FeedbackSchedule& schedule, const VectorFieldFamily& family,
                               double tol_w2, double tol_l1, const FlowOptions& flow);

// Re-evaluates the pass flag of an existing report at other tolerances.
bool steering_passes(const SteeringReport& report, double tol_w2, double tol_l1);

struct MetricSuiteReport {
  int trials = 0;
  double max_symmetry_violation = 0.0;
  double max_triangle_violation = 0.0;
  double max_self_distance = 0.0;
  double max_translation_violation = 0.0;  // | W2(mu, tau_c mu) - |c| |
  bool cost_matrix_symmetric = true;
  bool pass = true;
};

// Random discrete measures of at most 64 points; exact LP throughout.
MetricSuiteReport metric_property_suite(std::uint64_t seed, int trials,
                                        Vec2 translation = Vec2(0.3, 0.0));

// "VR1" report documents.
nlohmann::json steering_report_to_json(const SteeringReport& report);
nlohmann::json metric_report_to_json(const MetricSuiteReport& report);

}  // namespace liouville
