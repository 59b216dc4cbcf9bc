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

#include "liouville/core/domain.hpp"
#include "liouville/core/schedule.hpp"
#include "liouville/core/types.hpp"
#include "liouville/core/vector_field_family.hpp"

namespace liouville {

enum class JacobianMode {
  kAnalytic,          // control gradients from the control descriptors
  kFiniteDifference,  // control gradients by central differences of step fd_step
};

struct FlowOptions {
  explicit FlowOptions(Domain d) : domain(d) {}

  Domain domain;
  double step = 1e-3;    // fixed RK4 step, aligned to piece boundaries
  double margin = 0.1;   // working box = domain inflated by this fraction per side
  JacobianMode jacobian_mode = JacobianMode::kAnalytic;
  double fd_step = 1e-6;

  Domain working_box() const { return domain.inflated(margin); }
};

struct FlowPoint {
  Vec2 position;
  Mat2 jacobian;  // D Phi^t at the start point
};

// Phi^t(x0) by classical RK4 with fixed steps aligned to piece boundaries.
// Throws kBlowUp when a stage leaves the working box.
Vec2 integrate_flow(const FeedbackSchedule& schedule, const VectorFieldFamily& family,
                    const Vec2& x0, double t, const FlowOptions& options);

// Trajectory and variational matrix J' = D_x[sum v_i f_i] J, J(0) = Id.
// Throws kOrientationLoss if det J <= 0 at a piece boundary or at t.
FlowPoint integrate_flow_with_jacobian(const FeedbackSchedule& schedule,
                                       const VectorFieldFamily& family, const Vec2& x0, double t,
                                       const FlowOptions& options);

double flow_jacobian_det(const FeedbackSchedule& schedule, const VectorFieldFamily& family,
                         const Vec2& x0, double t, const FlowOptions& options);

// Phi^{-t}(y): the schedule integrated backwards in time from t to 0, which
// is the time-reversed schedule (pieces reversed, controls negated) run
// forward.
Vec2 invert_flow(const FeedbackSchedule& schedule, const VectorFieldFamily& family, const Vec2& y,
                 double t, const FlowOptions& options);

// Schedule running s1 then s2 (flow Phi_{s2} o Phi_{s1}); each operand is
// squeezed into half of the unit interval.
FeedbackSchedule compose_schedules(const FeedbackSchedule& s1, const FeedbackSchedule& s2);

// Runs the operands in order, each squeezed into 1/n of the unit interval.
FeedbackSchedule compose_schedules(const std::vector<FeedbackSchedule>& schedules);

// Convenience bundle of a schedule, its fields and integration settings.
class FlowMap {
 public:
  FlowMap(FeedbackSchedule schedule, VectorFieldFamily family, FlowOptions options);

  const FeedbackSchedule& schedule() const { return schedule_; }
  const VectorFieldFamily& family() const { return family_; }
  const FlowOptions& options() const { return options_; }

  Vec2 operator()(const Vec2& x, double t = 1.0) const;
  FlowPoint with_jacobian(const Vec2& x, double t = 1.0) const;
  Vec2 inverse(const Vec2& y, double t = 1.0) const;

 private:
  FeedbackSchedule schedule_;
  VectorFieldFamily family_;
  FlowOptions options_;
};

}  // namespace liouville
