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

#include <array>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "liouville/core/lattice.hpp"
#include "liouville/core/types.hpp"
#include "liouville/core/vector_field_family.hpp"
#include "liouville/core/velocity_field.hpp"

namespace liouville {

// Values of the m controls at one (tau, x), with their spatial gradients.
struct ControlValues {
  int count = 0;
  std::array<double, kMaxFields> value{};
  std::array<Vec2, kMaxFields> gradient{};
};

// Controls independent of time and state.
struct ConstantControl {
  std::vector<double> values;
};

// Coordinate shear realized by straight-line feedback. The map S moves only
// coordinate `axis`: S(x)_axis = K(x), where K is tabulated by `image`, or
// for an axis-1 shear with a preimage table P, K(x, y) = image(P_y^{-1}(x), y)
// with P_y(.) = P(., y), i.e. the inverse of the x-shear tabulated by P is
// applied before the lookup. The unit-time control steers each point along
// the segment from x to S(x) at constant speed:
//   c(tau, x) = K(x0) - x0_axis,   where (1 - tau) x0 + tau S(x0) = x.
class ShearControl {
 public:
  // Throws kInvalidArgument for an axis outside {0, 1}, or a preimage table
  // on an axis-0 shear.
  ShearControl(int axis, ScalarTable image, std::optional<ScalarTable> preimage = std::nullopt);

  int axis() const { return axis_; }
  const ScalarTable& image() const { return data_->image; }
  const std::optional<ScalarTable>& preimage() const { return data_->preimage; }
  double max_node_displacement() const { return data_->max_displacement; }

  // The time-1 map S and its inverse.
  Vec2 apply(const Vec2& x) const;
  Vec2 apply_inverse(const Vec2& y) const;

  // K and its gradient at x (new value of the active coordinate).
  double image_coordinate(const Vec2& x, Vec2* gradient) const;

  // Unit-time control value at (tau, x); fills its spatial gradient if asked.
  double control(double tau, const Vec2& x, Vec2* gradient) const;

 private:
  struct Data {
    ScalarTable image;
    std::optional<ScalarTable> preimage;
    double max_displacement = 0.0;
  };

  // K(transverse, active) with partial derivatives d/d(active), d/d(transverse).
  double profile(double transverse, double active, double* d_active, double* d_transverse) const;
  // Solves active0 + tau * (K(transverse, active0) - active0) = target.
  double solve_start(double tau, double transverse, double target, double* k, double* k_active,
                     double* k_transverse) const;

  int axis_;
  std::shared_ptr<const Data> data_;
};

// Controls solving sum_i v_i f_i(x) = w(tau, x) for a prescribed velocity w
// on a two-field invertible frame. The velocity is either a potential flow
// field (w(tau, .) at field time tau) or a coordinate shear's straight-line
// velocity c(tau, x) e_axis.
struct FrameInversionControl {
  using Velocity = std::variant<std::shared_ptr<const PotentialVelocityField>, ShearControl>;
  Velocity velocity;

  // w(tau, x) and optionally Dw.
  Vec2 target_velocity(double tau, const Vec2& x, Mat2* jacobian) const;
};

using Control = std::variant<ConstantControl, ShearControl, FrameInversionControl>;

// Fills the unit-time controls of `control` (for a single field count m) at
// (tau, x). Gradients are only computed when `with_gradient`.
void evaluate_control(const Control& control, const VectorFieldFamily& family, double tau,
                      const Vec2& x, bool with_gradient, ControlValues* out);

// One time piece. The piece runs for `duration` of global time and replays
// the unit-time control over [window_begin, window_end]: at local time s the
// controls are  v(s, x) = rate * U(window_begin + rate * s, x)  with
// rate = (window_end - window_begin) / duration.
struct SchedulePiece {
  double duration = 1.0;
  Control control;
  double window_begin = 0.0;
  double window_end = 1.0;

  double rate() const { return (window_end - window_begin) / duration; }
  double unit_time(double s) const { return window_begin + rate() * s; }
  // Index of the single nonzero control, or nullopt when several may be active.
  std::optional<int> active_index() const;
  bool is_zero() const;
};

class FeedbackSchedule {
 public:
  FeedbackSchedule() = default;
  FeedbackSchedule(int field_count, std::vector<SchedulePiece> pieces);

  // One zero-control piece of unit duration.
  static FeedbackSchedule zero(int field_count);

  int field_count() const { return field_count_; }
  const std::vector<SchedulePiece>& pieces() const { return pieces_; }
  int size() const { return static_cast<int>(pieces_.size()); }

  // Global start time of every piece; back() + pieces().back().duration == 1.
  const std::vector<double>& start_times() const { return starts_; }

  // Piece active at global time t (right-continuous) and the local time in it.
  std::pair<int, double> locate(double t) const;

  bool is_zero() const;

  // The schedule over [t0, t1] replayed in unit time.
  FeedbackSchedule restricted(double t0, double t1) const;

 private:
  int field_count_ = 0;
  std::vector<SchedulePiece> pieces_;
  std::vector<double> starts_;
};

// Throws kInvalidArgument unless durations are positive and sum to 1 within
// 1e-12, windows are ordered inside [0, 1], and control sizes match.
void validate_schedule(const FeedbackSchedule& schedule, const VectorFieldFamily& family);

// Velocity sum_i v_i f_i at local time s of a piece; Jacobian if requested.
Vec2 piece_velocity(const SchedulePiece& piece, const VectorFieldFamily& family, double s,
                    const Vec2& x, Mat2* jacobian);

// As above at global time t (right limit at piece boundaries).
Vec2 schedule_velocity(const FeedbackSchedule& schedule, const VectorFieldFamily& family,
                       double t, const Vec2& x, Mat2* jacobian = nullptr);

// Control values v_i at global time t (right limit at piece boundaries).
ControlValues schedule_controls(const FeedbackSchedule& schedule, const VectorFieldFamily& family,
                                double t, const Vec2& x);

}  // namespace liouville
