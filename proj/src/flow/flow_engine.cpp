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

#include "liouville/flow/flow_engine.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/core/error.hpp"

namespace liouville {

namespace {

void check_inside(const Domain& box, const Vec2& x) {
  if (!x.allFinite() || !box.contains_closure(x))
    throw Error(ErrorCode::kBlowUp, "trajectory left the working box");
}

Vec2 velocity(const SchedulePiece& piece, const VectorFieldFamily& family, double s,
              const Vec2& x, Mat2* a, const FlowOptions& options) {
  if (!a || options.jacobian_mode == JacobianMode::kAnalytic)
    return piece_velocity(piece, family, s, x, a);
  const double h = options.fd_step;
  for (int l = 0; l < 2; ++l) {
    Vec2 e = Vec2::Zero();
    e(l) = h;
    a->col(l) = (piece_velocity(piece, family, s, x + e, nullptr) -
                 piece_velocity(piece, family, s, x - e, nullptr)) / (2.0 * h);
  }
  return piece_velocity(piece, family, s, x, nullptr);
}

// RK4 over local times [s0, s1] of one piece (s1 < s0 runs backwards).
void integrate_piece(const SchedulePiece& piece, const VectorFieldFamily& family, double s0,
                     double s1, const FlowOptions& options, const Domain& box, Vec2* x, Mat2* j) {
  if (piece.is_zero() || s1 == s0) return;
  const double len = std::abs(s1 - s0);
  const int n = std::max(1, static_cast<int>(std::ceil(len / options.step - 1e-9)));
  const double h = (s1 - s0) / n;
  Mat2 a1, a2, a3, a4;
  Mat2* p1 = j ? &a1 : nullptr;
  Mat2* p2 = j ? &a2 : nullptr;
  Mat2* p3 = j ? &a3 : nullptr;
  Mat2* p4 = j ? &a4 : nullptr;
  for (int k = 0; k < n; ++k) {
    const double s = s0 + k * h;
    const Vec2 y = *x;
    const Vec2 k1 = velocity(piece, family, s, y, p1, options);
    const Vec2 y2 = y + 0.5 * h * k1;
    check_inside(box, y2);
    const Vec2 k2 = velocity(piece, family, s + 0.5 * h, y2, p2, options);
    const Vec2 y3 = y + 0.5 * h * k2;
    check_inside(box, y3);
    const Vec2 k3 = velocity(piece, family, s + 0.5 * h, y3, p3, options);
    const Vec2 y4 = y + h * k3;
    check_inside(box, y4);
    const Vec2 k4 = velocity(piece, family, s + h, y4, p4, options);
    *x = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    check_inside(box, *x);
    if (j) {
      const Mat2 j1 = a1 * *j;
      const Mat2 j2 = a2 * (*j + 0.5 * h * j1);
      const Mat2 j3 = a3 * (*j + 0.5 * h * j2);
      const Mat2 j4 = a4 * (*j + h * j3);
      *j += (h / 6.0) * (j1 + 2.0 * j2 + 2.0 * j3 + j4);
    }
  }
}

void check_time(double t) {
  if (!(t >= 0.0 && t <= 1.0 + 1e-12))
    throw Error(ErrorCode::kInvalidArgument, "flow time must lie in [0, 1]");
}

// Local end time of piece k when integrating up to global time t, or a
// negative value if the piece starts at or after t.
double piece_end(const FeedbackSchedule& schedule, int k, double t) {
  const double start = schedule.start_times()[k];
  const double d = schedule.pieces()[k].duration;
  if (t >= 1.0 - 1e-12) return d;
  if (start >= t) return -1.0;
  return std::min(d, t - start);
}

Vec2 run_forward(const FeedbackSchedule& schedule, const VectorFieldFamily& family,
                 const Vec2& x0, double t, const FlowOptions& options, Mat2* j) {
  check_time(t);
  const Domain box = options.working_box();
  check_inside(box, x0);
  Vec2 x = x0;
  if (j) j->setIdentity();
  for (int k = 0; k < schedule.size(); ++k) {
    const double end = piece_end(schedule, k, t);
    if (end < 0.0) break;
    integrate_piece(schedule.pieces()[k], family, 0.0, end, options, box, &x, j);
    if (j && !(j->determinant() > 0.0))
      throw Error(ErrorCode::kOrientationLoss, "flow Jacobian determinant is not positive");
  }
  return x;
}

}  // namespace

Vec2 integrate_flow(const FeedbackSchedule& schedule, const VectorFieldFamily& family,
                    const Vec2& x0, double t, const FlowOptions& options) {
  return run_forward(schedule, family, x0, t, options, nullptr);
}

FlowPoint integrate_flow_with_jacobian(const FeedbackSchedule& schedule,
                                       const VectorFieldFamily& family, const Vec2& x0, double t,
                                       const FlowOptions& options) {
  FlowPoint p;
  p.position = run_forward(schedule, family, x0, t, options, &p.jacobian);
  return p;
}

double flow_jacobian_det(const FeedbackSchedule& schedule, const VectorFieldFamily& family,
                         const Vec2& x0, double t, const FlowOptions& options) {
  return integrate_flow_with_jacobian(schedule, family, x0, t, options).jacobian.determinant();
}

Vec2 invert_flow(const FeedbackSchedule& schedule, const VectorFieldFamily& family, const Vec2& y,
                 double t, const FlowOptions& options) {
  check_time(t);
  const Domain box = options.working_box();
  check_inside(box, y);
  Vec2 x = y;
  for (int k = schedule.size() - 1; k >= 0; --k) {
    const double end = piece_end(schedule, k, t);
    if (end < 0.0) continue;
    integrate_piece(schedule.pieces()[k], family, end, 0.0, options, box, &x, nullptr);
  }
  return x;
}

FeedbackSchedule compose_schedules(const FeedbackSchedule& s1, const FeedbackSchedule& s2) {
  return compose_schedules(std::vector<FeedbackSchedule>{s1, s2});
}

FeedbackSchedule compose_schedules(const std::vector<FeedbackSchedule>& schedules) {
  if (schedules.empty()) throw Error(ErrorCode::kInvalidArgument, "nothing to compose");
  const int m = schedules.front().field_count();
  const double n = static_cast<double>(schedules.size());
  std::vector<SchedulePiece> pieces;
  for (const FeedbackSchedule& s : schedules) {
    if (s.field_count() != m)
      throw Error(ErrorCode::kInvalidArgument, "composed schedules have different field counts");
    for (SchedulePiece p : s.pieces()) {
      p.duration /= n;
      pieces.push_back(std::move(p));
    }
  }
  return FeedbackSchedule(m, std::move(pieces));
}

FlowMap::FlowMap(FeedbackSchedule schedule, VectorFieldFamily family, FlowOptions options)
    : schedule_(std::move(schedule)), family_(std::move(family)), options_(options) {
  validate_schedule(schedule_, family_);
}

Vec2 FlowMap::operator()(const Vec2& x, double t) const {
  return integrate_flow(schedule_, family_, x, t, options_);
}

FlowPoint FlowMap::with_jacobian(const Vec2& x, double t) const {
  return integrate_flow_with_jacobian(schedule_, family_, x, t, options_);
}

Vec2 FlowMap::inverse(const Vec2& y, double t) const {
  return invert_flow(schedule_, family_, y, t, options_);
}

}  // namespace liouville
