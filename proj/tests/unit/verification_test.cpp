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

#include "liouville/core/error.hpp"
#include "liouville/ot/exact_lp.hpp"
#include "liouville/verification/test_densities.hpp"
#include "liouville/verification/verification.hpp"

using namespace liouville;

namespace {

GridDensity uniform(const CellGrid& g) {
  return validate_density(GridDensity(g, std::vector<double>(g.size(), 1.0)), true);
}

FlowOptions unit_flow() { return FlowOptions(Domain::unit()); }

}  // namespace

TEST_SUITE("verification") {

TEST_CASE("L1 distance") {
  const CellGrid g(Domain::unit(), 16, 16);
  const GridDensity u = uniform(g);
  CHECK(l1_distance(u, u) == 0.0);

  const GridDensity left = validate_density(
      GridDensity::from_function(g, [](const Vec2& x) { return x.x() < 0.5 ? 1.0 : 0.0; }), false);
  const GridDensity right = validate_density(
      GridDensity::from_function(g, [](const Vec2& x) { return x.x() < 0.5 ? 0.0 : 1.0; }), false);
  CHECK(l1_distance(left, right) == doctest::Approx(2.0).epsilon(1e-14));

  CHECK_THROWS_AS(l1_distance(u, uniform(CellGrid(Domain::unit(), 8, 8))), Error);
}

TEST_CASE("L1 distance of a cosine perturbation matches the integral") {
  // int_0^1 |0.1 cos(pi x)| dx = 0.2 / pi, and the perturbation has zero mean.
  const CellGrid g(Domain::unit(), 4096, 1);
  const GridDensity u = uniform(g);
  const GridDensity c = validate_density(
      GridDensity::from_function(g, [](const Vec2& x) { return 1.0 + 0.1 * std::cos(std::numbers::pi * x.x()); }),
      true);
  CHECK(std::abs(l1_distance(u, c) - 0.2 / std::numbers::pi) <= 1e-6);
}

TEST_CASE("grid W2 agrees with the exact plan") {
  const DensityPair p = bump_pair(BumpPairSpec{16});
  const double exact = solve_plan_exact(to_weighted_points(p.mu), to_weighted_points(p.nu)).w2();
  const GridW2Estimate est = grid_w2(p.mu, p.nu);
  CHECK(est.block == 1);
  CHECK(est.points == 256);
  CHECK(est.converged);
  // The entropic estimate is biased by the blur; the bias shrinks with eps.
  SinkhornOptions fine;
  fine.eps = 5e-4;
  const GridW2Estimate sharp = grid_w2(p.mu, p.nu, 1024, fine);
  MESSAGE("grid W2 " << est.w2 << " at eps=5e-4 " << sharp.w2 << " exact " << exact);
  CHECK(std::abs(sharp.w2 - exact) < std::abs(est.w2 - exact));
  CHECK(std::abs(sharp.w2 - exact) <= 0.05 * exact);
  CHECK(std::abs(est.w2 - exact) <= 0.12 * exact);
  CHECK(grid_w2(p.mu, p.mu).w2 <= 1e-12);
}

TEST_CASE("grid W2 aggregates large grids") {
  const DensityPair p = bump_pair(BumpPairSpec{64});
  const GridW2Estimate est = grid_w2(p.mu, p.nu);
  CHECK(est.block == 2);
  CHECK(est.points == 1024);
  const GridW2Estimate small = grid_w2(p.mu, p.nu, 256);
  CHECK(small.block == 4);
  CHECK(std::abs(est.w2 - small.w2) == doctest::Approx(est.subsampling_error).epsilon(1e-9));
}

TEST_CASE("zero schedule steering") {
  const auto fam = VectorFieldFamily::coordinate();
  const FeedbackSchedule zero = FeedbackSchedule::zero(2);
  const DensityPair p = bump_pair(BumpPairSpec{16});

  const SteeringReport same = verify_steering(p.mu, p.mu, zero, fam, 1e-6, 1e-6, unit_flow());
  CHECK(same.pass);
  CHECK(same.l1_error <= 1e-14);
  CHECK(same.w2.w2 <= 1e-12);
  CHECK(same.min_det == doctest::Approx(1.0));

  const SteeringReport differ = verify_steering(p.mu, p.nu, zero, fam, 1e-3, 1e-3, unit_flow());
  CHECK_FALSE(differ.pass);
  CHECK(differ.l1_error == doctest::Approx(l1_distance(p.mu, p.nu)).epsilon(1e-12));
  CHECK(differ.w2.w2 > 0.0);
}

TEST_CASE("steering verdicts are monotone in the tolerances") {
  const auto fam = VectorFieldFamily::coordinate();
  const DensityPair p = bump_pair(BumpPairSpec{16});
  const SteeringReport r =
      verify_steering(p.mu, p.nu, FeedbackSchedule::zero(2), fam, 1.0, 1.0, unit_flow());
  CHECK(r.pass);
  const double l1 = r.l1_error, w2 = r.w2.w2;
  for (double a : {0.5, 0.9, 1.0, 1.1, 2.0})
    for (double b : {0.5, 0.9, 1.0, 1.1, 2.0}) {
      const bool pass = steering_passes(r, a * w2, b * l1);
      CHECK(pass == (a >= 1.0 && b >= 1.0));
      if (pass) CHECK(steering_passes(r, 1.5 * a * w2, 1.5 * b * l1));
    }
}

TEST_CASE("metric property suite") {
  const MetricSuiteReport empty = metric_property_suite(1, 0);
  CHECK(empty.trials == 0);
  CHECK(empty.pass);
  CHECK(empty.max_triangle_violation == 0.0);

  const MetricSuiteReport r = metric_property_suite(2026, 100);
  CHECK(r.trials == 100);
  CHECK(r.max_triangle_violation <= 1e-9);
  CHECK(r.max_symmetry_violation <= 1e-9);
  CHECK(r.max_self_distance <= 1e-9);
  CHECK(r.max_translation_violation <= 1e-9);
  CHECK(r.cost_matrix_symmetric);
  CHECK(r.pass);

  const MetricSuiteReport again = metric_property_suite(2026, 100);
  CHECK(metric_report_to_json(again) == metric_report_to_json(r));
}

TEST_CASE("translation of a random measure") {
  const MetricSuiteReport r = metric_property_suite(7, 10, Vec2(0.3, 0.0));
  CHECK(r.max_translation_violation <= 1e-9);
  const MetricSuiteReport d = metric_property_suite(7, 10, Vec2(-0.2, 0.45));
  CHECK(d.max_translation_violation <= 1e-9);
}

TEST_CASE("report documents") {
  SteeringReport r;
  r.l1_error = 0.01;
  r.w2.w2 = 0.002;
  r.w2.block = 2;
  r.w2.points = 1024;
  r.mass_before = 0.999;
  r.min_det = 0.7;
  r.tol_l1 = 0.02;
  r.tol_w2 = 0.03;
  r.pass = true;
  const nlohmann::json j = steering_report_to_json(r);
  CHECK(j["format"] == "VR1");
  CHECK(j["kind"] == "steering");
  CHECK(j["pass"] == true);
  CHECK(j["l1Error"] == 0.01);
  CHECK(j["w2"] == 0.002);
  CHECK(j["w2Block"] == 2);
  CHECK(j["massBeforeRenormalization"] == 0.999);
  CHECK(j["massDrift"].get<double>() == doctest::Approx(1.0 / 0.999));
  CHECK(j["minDetJacobian"] == 0.7);

  const nlohmann::json m = metric_report_to_json(MetricSuiteReport{});
  CHECK(m["format"] == "VR1");
  CHECK(m["kind"] == "metric-suite");
  CHECK(m["pass"] == true);
}

}  // TEST_SUITE
