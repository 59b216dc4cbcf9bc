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

#include "liouville/core/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "liouville/core/error.hpp"

namespace liouville {

namespace {

// Point with the given active and transverse coordinates.
Vec2 compose_point(int axis, double active, double transverse) {
  return axis == 0 ? Vec2(active, transverse) : Vec2(transverse, active);
}

}  // namespace

ShearControl::ShearControl(int axis, ScalarTable image, std::optional<ScalarTable> preimage)
    : axis_(axis) {
  if (axis != 0 && axis != 1) throw Error(ErrorCode::kInvalidArgument, "shear axis must be 0 or 1");
  if (preimage && axis != 1)
    throw Error(ErrorCode::kInvalidArgument, "only an axis-1 shear takes a preimage table");
  if (preimage && !(preimage->lattice() == image.lattice()))
    throw Error(ErrorCode::kGridMismatch, "shear tables on different lattices");
  auto data = std::make_shared<Data>();
  const NodeLattice& l = image.lattice();
  for (int k = 0; k < l.size(); ++k) {
    const double d = std::abs(image.values()[k] - l.node(k)(axis));
    data->max_displacement = std::max(data->max_displacement, d);
  }
  data->image = std::move(image);
  data->preimage = std::move(preimage);
  data_ = std::move(data);
}

double ShearControl::profile(double transverse, double active, double* d_active,
                             double* d_transverse) const {
  const ScalarTable& image = data_->image;
  const Extension ext_x = axis_ == 0 ? Extension::kLinear : Extension::kClamp;
  const Extension ext_y = axis_ == 0 ? Extension::kClamp : Extension::kLinear;
  if (!data_->preimage) {
    Vec2 g;
    const double k = image.value(compose_point(axis_, active, transverse), ext_x, ext_y, &g);
    *d_active = g(axis_);
    *d_transverse = g(1 - axis_);
    return k;
  }

  // K(x, y) = Q(xi, y) with P(xi, y) = x; P is piecewise linear in xi along a row.
  const ScalarTable& p = *data_->preimage;
  const NodeLattice& l = p.lattice();
  const double x = transverse;
  const double y = active;
  const LatticeCell row = locate(l, Vec2(l.origin.x(), y), Extension::kLinear, Extension::kClamp);
  const int j1 = l.ny > 1 ? row.j + 1 : row.j;
  auto r = [&](int i) { return (1.0 - row.q) * p.at(i, row.j) + row.q * p.at(i, j1); };
  int lo = 0, hi = l.nx - 2;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (r(mid) <= x) lo = mid; else hi = mid - 1;
  }
  const int c = std::max(lo, 0);
  const double r0 = r(c), r1 = r(c + 1);
  if (!(r1 > r0)) throw Error(ErrorCode::kNonMonotoneShear, "preimage row is not increasing");
  const double t = (x - r0) / (r1 - r0);
  const double xi = l.origin.x() + (c + t) * l.dx;
  const double p_xi = (r1 - r0) / l.dx;
  const double p_y = ((1.0 - t) * (p.at(c, j1) - p.at(c, row.j)) +
                      t * (p.at(c + 1, j1) - p.at(c + 1, row.j))) * row.dq_dy;
  Vec2 gq;
  const double k = image.value(Vec2(xi, y), Extension::kClamp, Extension::kLinear, &gq);
  *d_transverse = gq.x() / p_xi;
  *d_active = -gq.x() * p_y / p_xi + gq.y();
  return k;
}

double ShearControl::solve_start(double tau, double transverse, double target, double* k,
                                 double* k_active, double* k_transverse) const {
  auto g = [&](double a) {
    const double kv = profile(transverse, a, k_active, k_transverse);
    *k = kv;
    return a + tau * (kv - a) - target;
  };
  double a = target;
  double f = g(a);
  if (f == 0.0) return a;
  const double slope0 = 1.0 + tau * (*k_active - 1.0);
  // Bracket the root: G is increasing when K is monotone in the active coordinate.
  double lo = a, hi = a;
  double step = 1.01 * data_->max_displacement + 1e-9;
  for (int n = 0;; ++n) {
    if (n > 60) throw Error(ErrorCode::kNonMonotoneShear, "shear control cannot bracket start point");
    const double probe = f > 0.0 ? lo - step : hi + step;
    const double fp = g(probe);
    if (f > 0.0) {
      if (fp <= 0.0) { lo = probe; break; }
      hi = probe;
    } else {
      if (fp >= 0.0) { hi = probe; break; }
      lo = probe;
    }
    step *= 2.0;
  }
  const double scale = 1e-15 * (1.0 + std::abs(target));
  a = slope0 > 0.0 ? target - f / slope0 : 0.5 * (lo + hi);
  if (!(a > lo && a < hi)) a = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    f = g(a);
    if (std::abs(f) <= scale || hi - lo <= scale) return a;
    if (f < 0.0) lo = a; else hi = a;
    const double slope = 1.0 + tau * (*k_active - 1.0);
    double next = slope > 0.0 ? a - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    a = next;
  }
  g(a);
  return a;
}

Vec2 ShearControl::apply(const Vec2& x) const {
  Vec2 y = x;
  y(axis_) = image_coordinate(x, nullptr);
  return y;
}

Vec2 ShearControl::apply_inverse(const Vec2& y) const {
  double k, ka, kt;
  Vec2 x = y;
  x(axis_) = solve_start(1.0, y(1 - axis_), y(axis_), &k, &ka, &kt);
  return x;
}

double ShearControl::image_coordinate(const Vec2& x, Vec2* gradient) const {
  double da, dt;
  const double k = profile(x(1 - axis_), x(axis_), &da, &dt);
  if (gradient) {
    (*gradient)(axis_) = da;
    (*gradient)(1 - axis_) = dt;
  }
  return k;
}

double ShearControl::control(double tau, const Vec2& x, Vec2* gradient) const {
  double k, ka, kt;
  const double a0 = solve_start(tau, x(1 - axis_), x(axis_), &k, &ka, &kt);
  if (gradient) {
    const double slope = 1.0 + tau * (ka - 1.0);
    (*gradient)(axis_) = (ka - 1.0) / slope;
    (*gradient)(1 - axis_) = kt / slope;
  }
  return k - a0;
}

Vec2 FrameInversionControl::target_velocity(double tau, const Vec2& x, Mat2* jacobian) const {
  return std::visit(
      [&](const auto& v) -> Vec2 {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ShearControl>) {
          Vec2 g;
          const double c = v.control(tau, x, jacobian ? &g : nullptr);
          Vec2 w = Vec2::Zero();
          w(v.axis()) = c;
          if (jacobian) {
            jacobian->setZero();
            jacobian->row(v.axis()) = g.transpose();
          }
          return w;
        } else {
          return v->evaluate(tau, x, jacobian);
        }
      },
      velocity);
}

void evaluate_control(const Control& control, const VectorFieldFamily& family, double tau,
                      const Vec2& x, bool with_gradient, ControlValues* out) {
  const int m = family.size();
  out->count = m;
  for (int i = 0; i < m; ++i) {
    out->value[i] = 0.0;
    out->gradient[i].setZero();
  }
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ConstantControl>) {
          for (int i = 0; i < m; ++i) out->value[i] = c.values[i];
        } else if constexpr (std::is_same_v<T, ShearControl>) {
          out->value[c.axis()] = c.control(tau, x, with_gradient ? &out->gradient[c.axis()] : nullptr);
        } else {
          Mat2 dw;
          const Vec2 w = c.target_velocity(tau, x, with_gradient ? &dw : nullptr);
          const FrameMatrix f = frame_matrix(family, x);
          const Eigen::PartialPivLU<Mat2> lu(f.matrix);
          const Vec2 v = lu.solve(w);
          out->value[0] = v(0);
          out->value[1] = v(1);
          if (with_gradient) {
            // F Dv = Dw - sum_i v_i Df_i
            const Mat2 rhs = dw - v(0) * family.jacobian(0, x) - v(1) * family.jacobian(1, x);
            const Mat2 dv = lu.solve(rhs);
            out->gradient[0] = dv.row(0).transpose();
            out->gradient[1] = dv.row(1).transpose();
          }
        }
      },
      control);
}

std::optional<int> SchedulePiece::active_index() const {
  if (const auto* s = std::get_if<ShearControl>(&control)) return s->axis();
  if (const auto* c = std::get_if<ConstantControl>(&control)) {
    std::optional<int> idx;
    for (int i = 0; i < static_cast<int>(c->values.size()); ++i) {
      if (c->values[i] == 0.0) continue;
      if (idx) return std::nullopt;
      idx = i;
    }
    return idx;
  }
  return std::nullopt;
}

bool SchedulePiece::is_zero() const {
  const auto* c = std::get_if<ConstantControl>(&control);
  return c && std::all_of(c->values.begin(), c->values.end(), [](double v) { return v == 0.0; });
}

FeedbackSchedule::FeedbackSchedule(int field_count, std::vector<SchedulePiece> pieces)
    : field_count_(field_count), pieces_(std::move(pieces)) {
  if (field_count_ < 1 || field_count_ > kMaxFields)
    throw Error(ErrorCode::kInvalidArgument, "schedule field count must be 1 to 4");
  if (pieces_.empty()) throw Error(ErrorCode::kInvalidArgument, "schedule has no pieces");
  starts_.reserve(pieces_.size());
  double t = 0.0;
  for (const SchedulePiece& p : pieces_) {
    starts_.push_back(t);
    t += p.duration;
  }
}

FeedbackSchedule FeedbackSchedule::zero(int field_count) {
  SchedulePiece p;
  p.control = ConstantControl{std::vector<double>(field_count, 0.0)};
  return FeedbackSchedule(field_count, {p});
}

std::pair<int, double> FeedbackSchedule::locate(double t) const {
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
  const int k = std::max(0, static_cast<int>(it - starts_.begin()) - 1);
  const double s = std::clamp(t - starts_[k], 0.0, pieces_[k].duration);
  return {k, s};
}

bool FeedbackSchedule::is_zero() const {
  return std::all_of(pieces_.begin(), pieces_.end(),
                     [](const SchedulePiece& p) { return p.is_zero(); });
}

FeedbackSchedule FeedbackSchedule::restricted(double t0, double t1) const {
  if (!(t0 >= 0.0 && t1 <= 1.0 + 1e-12 && t1 > t0))
    throw Error(ErrorCode::kInvalidArgument, "restriction needs 0 <= t0 < t1 <= 1");
  const double span = t1 - t0;
  std::vector<SchedulePiece> out;
  for (int k = 0; k < size(); ++k) {
    const SchedulePiece& p = pieces_[k];
    const double l0 = std::max(t0 - starts_[k], 0.0);
    const double l1 = std::min(t1 - starts_[k], p.duration);
    if (l1 - l0 <= 1e-15) continue;
    SchedulePiece q = p;
    q.window_begin = p.unit_time(l0);
    q.window_end = p.unit_time(l1);
    q.duration = (l1 - l0) / span;
    out.push_back(std::move(q));
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "restriction is empty");
  // Absorb rounding so durations sum to one.
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < out.size(); ++k) sum += out[k].duration;
  out.back().duration = 1.0 - sum;
  return FeedbackSchedule(field_count_, std::move(out));
}

void validate_schedule(const FeedbackSchedule& schedule, const VectorFieldFamily& family) {
  if (schedule.field_count() != family.size())
    throw Error(ErrorCode::kInvalidArgument, "schedule field count does not match family");
  double total = 0.0;
  for (const SchedulePiece& p : schedule.pieces()) {
    if (!(p.duration > 0.0) || !std::isfinite(p.duration))
      throw Error(ErrorCode::kInvalidArgument, "piece duration must be positive");
    if (!(p.window_begin >= 0.0 && p.window_begin <= p.window_end && p.window_end <= 1.0))
      throw Error(ErrorCode::kInvalidArgument, "piece window must be ordered inside [0, 1]");
    total += p.duration;
    if (const auto* c = std::get_if<ConstantControl>(&p.control)) {
      if (static_cast<int>(c->values.size()) != family.size())
        throw Error(ErrorCode::kInvalidArgument, "constant control size does not match family");
      for (double v : c->values)
        if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "constant control is not finite");
    } else if (const auto* s = std::get_if<ShearControl>(&p.control)) {
      if (s->axis() >= family.size())
        throw Error(ErrorCode::kInvalidArgument, "shear axis exceeds field count");
    } else if (!family.is_frame()) {
      throw Error(ErrorCode::kInvalidArgument, "frame inversion needs a two-field family");
    }
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw Error(ErrorCode::kInvalidArgument, "piece durations must sum to 1");
}

Vec2 piece_velocity(const SchedulePiece& piece, const VectorFieldFamily& family, double s,
                    const Vec2& x, Mat2* jacobian) {
  ControlValues cv;
  const double rate = piece.rate();
  evaluate_control(piece.control, family, piece.unit_time(s), x, jacobian != nullptr, &cv);
  Vec2 v = Vec2::Zero();
  if (jacobian) jacobian->setZero();
  for (int i = 0; i < cv.count; ++i) {
    const double u = rate * cv.value[i];
    if (u == 0.0 && (!jacobian || cv.gradient[i].isZero(0.0))) continue;
    const Vec2 f = family.eval(i, x);
    v += u * f;
    if (jacobian) *jacobian += u * family.jacobian(i, x) + rate * f * cv.gradient[i].transpose();
  }
  return v;
}

Vec2 schedule_velocity(const FeedbackSchedule& schedule, const VectorFieldFamily& family,
                       double t, const Vec2& x, Mat2* jacobian) {
  const auto [k, s] = schedule.locate(t);
  return piece_velocity(schedule.pieces()[k], family, s, x, jacobian);
}

ControlValues schedule_controls(const FeedbackSchedule& schedule, const VectorFieldFamily& family,
                                double t, const Vec2& x) {
  const auto [k, s] = schedule.locate(t);
  const SchedulePiece& p = schedule.pieces()[k];
  ControlValues cv;
  evaluate_control(p.control, family, p.unit_time(s), x, false, &cv);
  for (int i = 0; i < cv.count; ++i) cv.value[i] *= p.rate();
  return cv;
}

}  // namespace liouville
