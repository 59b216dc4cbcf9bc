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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "liouville/core/error.hpp"
#include "liouville/core/grid.hpp"
#include "liouville/core/lattice.hpp"
#include "liouville/core/lvg_io.hpp"
#include "liouville/core/schedule.hpp"
#include "liouville/core/vector_field_family.hpp"

using namespace liouville;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

GridDensity random_density(int nx, int ny, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<double> v(nx * ny);
  for (double& x : v) x = u(rng);
  return GridDensity(CellGrid(Domain::unit(), nx, ny), v);
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("domain rejects inverted corners") {
  CHECK(code_of([] { Domain(Vec2(0, 0), Vec2(1, 0)); }) == ErrorCode::kInvalidArgument);
  const Domain d(Vec2(-1, 0), Vec2(1, 2));
  CHECK(d.contains(Vec2(0, 1)));
  CHECK_FALSE(d.contains(Vec2(1, 1)));
  CHECK(d.contains_closure(Vec2(1, 1)));
  const Domain w = d.inflated(0.1);
  CHECK(w.lower().x() == doctest::Approx(-1.2));
  CHECK(w.upper().y() == doctest::Approx(2.2));
}

TEST_CASE("uniform density is already normalized") {
  const CellGrid g(Domain::unit(), 32, 32);
  const GridDensity d(g, std::vector<double>(g.size(), 1.0));
  const GridDensity v = validate_density(d, true);
  CHECK(v == d);
  CHECK(v.mass() == 1.0);
}

TEST_CASE("constant 2 renormalizes to 1") {
  const CellGrid g(Domain::unit(), 32, 32);
  const GridDensity v = validate_density(GridDensity(g, std::vector<double>(g.size(), 2.0)), false);
  for (int k = 0; k < v.size(); ++k) CHECK(v.at(k) == 1.0);
}

TEST_CASE("density validation errors") {
  const CellGrid g(Domain::unit(), 4, 4);
  std::vector<double> v(g.size(), 1.0);
  v[5] = -0.1;
  CHECK(code_of([&] { validate_density(GridDensity(g, v), true); }) == ErrorCode::kNegativeDensity);
  CHECK(code_of([&] { validate_density(GridDensity(g, v), false); }) == ErrorCode::kNegativeDensity);
  v[5] = 0.0;
  CHECK_NOTHROW(validate_density(GridDensity(g, v), false));
  CHECK(code_of([&] { validate_density(GridDensity(g, v), true); }) == ErrorCode::kNegativeDensity);
  v[5] = std::nan("");
  CHECK(code_of([&] { validate_density(GridDensity(g, v), false); }) == ErrorCode::kNonFinite);
  CHECK(code_of([&] {
          validate_density(GridDensity(g, std::vector<double>(g.size(), 0.0)), false);
        }) == ErrorCode::kZeroMass);
}

TEST_CASE("normalization is idempotent bit for bit") {
  for (unsigned seed = 1; seed <= 20; ++seed) {
    const GridDensity once = validate_density(random_density(17, 23, seed), true);
    const GridDensity twice = validate_density(once, true);
    CHECK(once == twice);
    CHECK(std::abs(once.mass() - 1.0) <= 1e-9);
  }
}

TEST_CASE("constant density mass is resolution independent") {
  const Domain d(Vec2(-0.3, 0.2), Vec2(1.7, 0.9));
  for (int n : {3, 8, 17, 64, 129}) {
    const CellGrid g(d, n, n + 5);
    const GridDensity c(g, std::vector<double>(g.size(), 1.0 / d.area()));
    CHECK(std::abs(c.mass() - 1.0) <= 1e-12);
  }
}

TEST_CASE("sample_density reproduces constants, nodes and ramps") {
  const CellGrid g(Domain::unit(), 16, 8);
  const GridDensity one(g, std::vector<double>(g.size(), 1.0));
  for (const Vec2& x : {Vec2(0.0, 0.0), Vec2(0.313, 0.77), Vec2(1.0, 0.5), Vec2(1.4, -0.2)})
    CHECK(sample_density(one, x) == 1.0);

  const GridDensity ramp = GridDensity::from_function(g, [](const Vec2& x) { return x.x(); });
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      CHECK(sample_density(ramp, g.center(i, j)) == ramp.at(i, j));
      if (i + 1 < g.nx()) {
        const Vec2 mid = 0.5 * (g.center(i, j) + g.center(i + 1, j));
        CHECK(sample_density(ramp, mid) ==
              doctest::Approx(0.5 * (ramp.at(i, j) + ramp.at(i + 1, j))).epsilon(1e-14));
      }
    }
  }
  // Outside the hull of cell centers the interpolant is clamped.
  CHECK(sample_density(ramp, Vec2(0.0, 0.3)) == doctest::Approx(ramp.at(0, 2)));
  Vec2 grad;
  sample_density(ramp, Vec2(0.5, 0.5), &grad);
  CHECK(grad.x() == doctest::Approx(1.0));
  CHECK(grad.y() == doctest::Approx(0.0));
}

TEST_CASE("coarsen preserves mass") {
  const GridDensity d = validate_density(random_density(16, 8, 3), true);
  const GridDensity c = coarsen(d, 4);
  CHECK(c.nx() == 4);
  CHECK(c.ny() == 2);
  CHECK(c.mass() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(code_of([&] { coarsen(d, 3); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("pairwise sum does not depend on caller chunking") {
  std::vector<double> v(1000);
  for (int k = 0; k < 1000; ++k) v[k] = 1.0 / (k + 1.0);
  const double a = pairwise_sum(v);
  const double b = pairwise_sum(std::vector<double>(v));
  CHECK(a == b);
  double naive = 0.0;
  for (double x : v) naive += x;
  CHECK(a == doctest::Approx(naive).epsilon(1e-14));
}

TEST_CASE("frame matrix of canonical, rotated and degenerate families") {
  const FrameMatrix id = frame_matrix(VectorFieldFamily::coordinate(), Vec2(0.3, -2.0));
  CHECK(id.matrix == Mat2::Identity());
  CHECK(id.determinant == 1.0);

  const double th = std::numbers::pi / 6;
  const FrameMatrix r = frame_matrix(VectorFieldFamily::rotated(th), Vec2(0.7, 0.1));
  Mat2 expect;
  expect << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  CHECK((r.matrix - expect).norm() < 1e-15);
  CHECK(r.determinant == doctest::Approx(1.0).epsilon(1e-15));

  Mat2 a;
  a << 1.0, 2.0, -0.5, 0.3;
  const VectorFieldFamily same = VectorFieldFamily::linear({a, a});
  CHECK(code_of([&] { frame_matrix(same, Vec2(1.0, 1.0)); }) == ErrorCode::kSingularFrame);
  CHECK(code_of([&] { frame_matrix(VectorFieldFamily::linear({a}), Vec2(1.0, 1.0)); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("frame determinant varies by O(h) between adjacent nodes") {
  const VectorFieldFamily twisted = VectorFieldFamily::rotated(0.4, 1.3);
  Mat2 r;
  r << 0.0, -1.0, 1.0, 0.0;
  const VectorFieldFamily lin = VectorFieldFamily::linear({Mat2::Identity(), r + 0.2 * Mat2::Identity()});
  for (int n : {16, 32, 64}) {
    const double h = 1.0 / n;
    double worst_twisted = 0.0, worst_lin = 0.0;
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i < n; ++i) {
        const Vec2 x(0.5 + i * h, 0.5 + j * h), y(0.5 + (i + 1) * h, 0.5 + j * h);
        worst_twisted = std::max(worst_twisted, std::abs(frame_matrix(twisted, x).determinant -
                                                         frame_matrix(twisted, y).determinant));
        worst_lin = std::max(worst_lin, std::abs(frame_matrix(lin, x).determinant -
                                                 frame_matrix(lin, y).determinant));
      }
    }
    CHECK(worst_twisted <= 1e-12);
    // det[x, (R + 0.2) x] = |x|^2, whose variation over a step h is at most
    // 2 |x| h + h^2 on the sampled box.
    CHECK(worst_lin <= (2.0 * std::sqrt(4.5) + h) * h);
  }
}

TEST_CASE("growth condition holds on the working box") {
  const Domain box = Domain::unit().inflated(0.1);
  CHECK(VectorFieldFamily::coordinate().max_growth_ratio(box) <= 1.0);
  CHECK(VectorFieldFamily::rotated(0.3, 2.0).max_growth_ratio(box) <= 1.0);
  Mat2 a;
  a << 1.0, 0.0, 0.0, -1.0;
  const VectorFieldFamily lin = VectorFieldFamily::linear({a});
  CHECK(lin.max_growth_ratio(box) <= lin.growth_constant());
  const FrameConditionReport rep = frame_condition(VectorFieldFamily::rotated(0.5), box);
  CHECK(rep.max_condition == doctest::Approx(1.0));
}

TEST_CASE("rotated family Jacobian matches finite differences") {
  const VectorFieldFamily f = VectorFieldFamily::rotated(0.2, 1.7);
  const Vec2 x(0.31, 0.64);
  const double h = 1e-6;
  for (int i = 0; i < 2; ++i) {
    Mat2 fd;
    for (int l = 0; l < 2; ++l) {
      Vec2 e = Vec2::Zero();
      e(l) = h;
      fd.col(l) = (f.eval(i, x + e) - f.eval(i, x - e)) / (2 * h);
    }
    CHECK((fd - f.jacobian(i, x)).norm() < 1e-8);
  }
}

TEST_CASE("LVG1 round trip is exact") {
  const GridDensity d = validate_density(random_density(7, 5, 11), true);
  std::stringstream s;
  write_lvg(s, d);
  const GridDensity back = read_lvg(s);
  CHECK(back == d);
}

TEST_CASE("LVG1 parse errors carry line numbers") {
  auto parse_error = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_lvg(in);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
      return std::string(e.detail());
    }
    FAIL("expected a parse error");
    return std::string();
  };
  CHECK(parse_error("LVG2 1 1 0 0 1 1\n1\n").find("line 1") != std::string::npos);
  CHECK(parse_error("LVG1 2 1 0 0 1 1\n1 x\n").find("line 2") != std::string::npos);
  CHECK(parse_error("LVG1 2 2 0 0 1 1\n1 1\n1\n").find("line 3") != std::string::npos);
}

TEST_CASE("schedule locate is right-continuous") {
  std::vector<SchedulePiece> pieces(3);
  pieces[0].duration = 0.25;
  pieces[1].duration = 0.5;
  pieces[2].duration = 0.25;
  for (int k = 0; k < 3; ++k) pieces[k].control = ConstantControl{{double(k), 0.0}};
  const FeedbackSchedule s(2, pieces);
  CHECK_NOTHROW(validate_schedule(s, VectorFieldFamily::coordinate()));
  CHECK(s.locate(0.0).first == 0);
  CHECK(s.locate(0.25).first == 1);
  CHECK(s.locate(0.25).second == 0.0);
  CHECK(s.locate(0.75).first == 2);
  CHECK(s.locate(1.0).first == 2);
  CHECK(schedule_controls(s, VectorFieldFamily::coordinate(), 0.25, Vec2(0.5, 0.5)).value[0] == 2.0);
  CHECK(schedule_controls(s, VectorFieldFamily::coordinate(), 0.2499, Vec2(0.5, 0.5)).value[0] == 0.0);
}

TEST_CASE("schedule validation") {
  const VectorFieldFamily fam = VectorFieldFamily::coordinate();
  std::vector<SchedulePiece> pieces(2);
  pieces[0].duration = 0.5;
  pieces[1].duration = 0.4;
  for (auto& p : pieces) p.control = ConstantControl{{1.0, 0.0}};
  CHECK(code_of([&] { validate_schedule(FeedbackSchedule(2, pieces), fam); }) ==
        ErrorCode::kInvalidArgument);
  pieces[1].duration = 0.5;
  pieces[1].control = ConstantControl{{1.0}};
  CHECK(code_of([&] { validate_schedule(FeedbackSchedule(2, pieces), fam); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([] { FeedbackSchedule(2, {}); }) == ErrorCode::kInvalidArgument);
  CHECK(FeedbackSchedule::zero(2).is_zero());
}

TEST_CASE("restricted schedules keep the velocity up to the time scale") {
  const VectorFieldFamily fam = VectorFieldFamily::coordinate();
  const ShearControl sh = testing::table_shear(0, 8, [](const Vec2& x) {
    return x.x() + 0.05 * std::sin(std::numbers::pi * x.x()) * (1.0 + x.y());
  });
  std::vector<SchedulePiece> pieces(2);
  pieces[0].duration = 0.4;
  pieces[0].control = sh;
  pieces[1].duration = 0.6;
  pieces[1].control = ConstantControl{{0.1, -0.2}};
  const FeedbackSchedule s(2, pieces);
  const FeedbackSchedule r = s.restricted(0.2, 0.7);
  CHECK_NOTHROW(validate_schedule(r, fam));
  for (double u : {0.0, 0.1, 0.39, 0.41, 0.8, 0.99}) {
    const Vec2 x(0.3 + 0.2 * u, 0.6);
    const Vec2 a = schedule_velocity(r, fam, u, x);
    const Vec2 b = 0.5 * schedule_velocity(s, fam, 0.2 + 0.5 * u, x);
    CHECK((a - b).norm() < 1e-12);
  }
}

TEST_CASE("shear control moves along straight lines") {
  const ShearControl s = testing::table_shear(1, 10, [](const Vec2& x) {
    return x.y() + 0.03 * std::sin(2 * std::numbers::pi * x.y()) * std::cos(x.x());
  });
  for (const Vec2& x0 : {Vec2(0.1, 0.2), Vec2(0.55, 0.5), Vec2(0.93, 0.97)}) {
    const Vec2 target = s.apply(x0);
    CHECK((s.apply_inverse(target) - x0).norm() < 1e-13);
    // A point at fraction tau of the segment sees the segment's velocity.
    for (double tau : {0.0, 0.3, 0.8, 1.0}) {
      const Vec2 x = (1 - tau) * x0 + tau * target;
      CHECK(s.control(tau, x, nullptr) == doctest::Approx(target.y() - x0.y()).epsilon(1e-12));
    }
  }
}

TEST_CASE("shear control gradient matches finite differences") {
  const NodeLattice l = NodeLattice::vertices(CellGrid(Domain::unit(), 12, 12));
  std::vector<double> p(l.size()), q(l.size());
  for (int k = 0; k < l.size(); ++k) {
    const Vec2 x = l.node(k);
    p[k] = x.x() + 0.02 * std::sin(3 * x.x() + x.y());
    q[k] = x.y() + 0.03 * std::cos(2 * x.x() - x.y());
  }
  const ShearControl first(0, ScalarTable(l, p));
  const ShearControl second(1, ScalarTable(l, q), ScalarTable(l, p));
  for (const ShearControl* s : {&first, &second}) {
    for (double tau : {0.0, 0.45, 1.0}) {
      // Off cell boundaries, where the interpolant is smooth.
      const Vec2 x(0.4321, 0.5678);
      Vec2 g;
      s->control(tau, x, &g);
      const double h = 1e-7;
      Vec2 fd;
      for (int l2 = 0; l2 < 2; ++l2) {
        Vec2 e = Vec2::Zero();
        e(l2) = h;
        fd(l2) = (s->control(tau, x + e, nullptr) - s->control(tau, x - e, nullptr)) / (2 * h);
      }
      CHECK((g - fd).norm() < 1e-6);
    }
  }
  // The composite second shear realizes the bilinear interpolant of (p, q).
  const MapTable qmap(l, p, q);
  for (const Vec2& x : {Vec2(0.1, 0.9), Vec2(0.37, 0.42), Vec2(0.99, 0.01)})
    CHECK((second.apply(first.apply(x)) - qmap.evaluate(x)).norm() < 1e-14);
}

}  // TEST_SUITE
