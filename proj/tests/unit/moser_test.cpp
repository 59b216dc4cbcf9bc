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
#include <memory>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "liouville/core/error.hpp"
#include "liouville/moser/moser.hpp"
#include "liouville/moser/poisson.hpp"
#include "liouville/transport/density_transport.hpp"
#include "liouville/verification/test_densities.hpp"

using namespace liouville;

namespace {

// Five-point Neumann Laplacian with mirrored ghost cells.
double stencil(const CellField& u, int i, int j) {
  const CellGrid& g = u.grid;
  auto at = [&](int a, int b) {
    return u.at(std::clamp(a, 0, g.nx() - 1), std::clamp(b, 0, g.ny() - 1));
  };
  const double hx = g.dx(), hy = g.dy();
  return (at(i + 1, j) - 2 * at(i, j) + at(i - 1, j)) / (hx * hx) +
         (at(i, j + 1) - 2 * at(i, j) + at(i, j - 1)) / (hy * hy);
}

double l1(const GridDensity& a, const GridDensity& b) {
  double s = 0.0;
  for (int k = 0; k < a.size(); ++k) s += std::abs(a.at(k) - b.at(k)) * a.cell_area();
  return s;
}

FeedbackSchedule field_schedule(std::shared_ptr<const PotentialVelocityField> w) {
  SchedulePiece p;
  p.control = FrameInversionControl{std::move(w)};
  return FeedbackSchedule(2, {p});
}

GridDensity linear_mix(const GridDensity& a, const GridDensity& b, double t) {
  std::vector<double> v(a.size());
  for (int k = 0; k < a.size(); ++k) v[k] = (1 - t) * a.at(k) + t * b.at(k);
  return GridDensity(a.grid(), v);
}

}  // namespace

TEST_SUITE("moser") {

TEST_CASE("zero source gives zero potential") {
  const CellGrid g(Domain::unit(), 16, 16);
  const PoissonSolution s = solve_poisson_neumann(CellField(g, 0.0));
  CHECK(testing::max_abs(s.potential.values) == 0.0);
}

TEST_CASE("cosine eigenfunction converges at second order") {
  double prev = 0.0;
  for (int n : {32, 64}) {
    const CellGrid g(Domain::unit(), n, n);
    CellField src(g, 0.0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) src.at(i, j) = std::cos(std::numbers::pi * g.center(i, j).x());
    const PoissonSolution s = solve_poisson_neumann(src);
    CHECK(s.residual <= 1e-8);
    double err = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        err = std::max(err, std::abs(s.potential.at(i, j) +
                                     std::cos(std::numbers::pi * g.center(i, j).x()) /
                                         (std::numbers::pi * std::numbers::pi)));
    const double h = 1.0 / n;
    CHECK(err <= h * h);
    if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.1));
    prev = err;
  }
}

TEST_CASE("random compatible source meets the residual bound") {
  const CellGrid g(Domain(Vec2(0, 0), Vec2(2, 1)), 40, 20);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CellField src(g, 0.0);
  double mean = 0.0;
  for (double& v : src.values) mean += (v = u(rng)) / g.size();
  for (double& v : src.values) v -= mean;
  const PoissonSolution s = solve_poisson_neumann(src);
  double res = 0.0, avg = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      res = std::max(res, std::abs(stencil(s.potential, i, j) - src.at(i, j)));
      avg += s.potential.at(i, j) / g.size();
    }
  CHECK(res <= 1e-8);
  CHECK(std::abs(avg) <= 1e-12);
}

TEST_CASE("source with nonzero mean is rejected") {
  const CellGrid g(Domain::unit(), 8, 8);
  try {
    solve_poisson_neumann(CellField(g, 0.1));
    FAIL("expected incompatibility");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIncompatibleSource);
  }
}

TEST_CASE("equal densities give a zero field and the identity") {
  const GridDensity mu = bump_pair(BumpPairSpec{16}).mu;
  const PotentialVelocityField w = moser_interpolation_field(mu, mu);
  for (const Vec2& x : {Vec2(0.1, 0.2), Vec2(0.5, 0.5), Vec2(0.93, 0.4)})
    CHECK(w.evaluate(0.3, x).norm() == 0.0);
  const MoserDiffeo d = build_moser_diffeo(mu, mu);
  const NodeLattice l = d.endpoint.lattice();
  for (int k = 0; k < l.size(); ++k) CHECK((d.endpoint.at(k) - l.node(k)).norm() == 0.0);
}

TEST_CASE("profiles in x give fields without a y component") {
  const DensityPair p = translation_pair(TranslationPairSpec{32});
  const PotentialVelocityField w = moser_interpolation_field(p.mu, p.nu);
  double worst = 0.0, largest = 0.0;
  for (int j = 0; j <= 20; ++j)
    for (int i = 0; i <= 20; ++i) {
      const Vec2 v = w.evaluate(0.4, Vec2(i / 20.0, j / 20.0));
      worst = std::max(worst, std::abs(v.y()));
      largest = std::max(largest, std::abs(v.x()));
    }
  CHECK(worst <= 1e-10);
  CHECK(largest > 1e-2);
}

TEST_CASE("the field carries rho_mu through the linear interpolation") {
  const DensityPair p = cosine_pair();
  auto w = std::make_shared<const PotentialVelocityField>(moser_interpolation_field(p.mu, p.nu));
  const FeedbackSchedule s = field_schedule(w);
  FlowOptions o(Domain::unit());
  for (double t : {0.25, 0.5, 0.75, 1.0}) {
    const PushforwardResult r = pushforward_density(p.mu, s, VectorFieldFamily::coordinate(), t, o);
    CHECK(std::abs(r.mass_before - 1.0) <= 1e-3);
    CHECK(r.min_det > 0.0);
    const double e = l1(r.density, linear_mix(p.mu, p.nu, t));
    MESSAGE("t = " << t << ": L1 to the interpolant " << e);
    CHECK(e <= 5e-3);
    if (t == 1.0) CHECK(l1(r.density, p.nu) <= 1e-3);
  }
}

TEST_CASE("Moser diffeomorphism of the cosine pair") {
  const DensityPair p = cosine_pair();
  const MoserDiffeo d = build_moser_diffeo(p.mu, p.nu);
  REQUIRE(d.checkpoint_times.size() == 4);
  CHECK(d.checkpoint_times[0] == 0.25);
  for (double m : d.checkpoint_min_det) CHECK(m > 0.0);
  double min_det = std::numeric_limits<double>::infinity();
  for (double v : d.endpoint_det.values()) min_det = std::min(min_det, v);
  CHECK(min_det > 0.0);
  const Vec2 x(0.37, 0.61);
  CHECK(d.isotopy->evaluate(0.0, x) == x);
  // The endpoint table samples the isotopy at time 1.
  const NodeLattice l = d.endpoint.lattice();
  for (int k : {0, 100, 2000, l.size() - 1})
    CHECK((d.endpoint.at(k) - d.isotopy->evaluate(1.0, l.node(k))).norm() <= 1e-12);
  // Transitions compose.
  const Vec2 a = d.isotopy->transition(0.0, 0.5, x);
  CHECK((d.isotopy->transition(0.5, 1.0, a) - d.isotopy->evaluate(1.0, x)).norm() <= 1e-9);
}

TEST_CASE("translated profiles give a translation in the bulk") {
  const TranslationPairSpec spec;
  const DensityPair p = translation_pair(spec);
  const MoserDiffeo d = build_moser_diffeo(p.mu, p.nu);
  const NodeLattice l = d.endpoint.lattice();
  // The floor does not move, so even the exact 1D map falls short of the
  // shift by about shift * floor / rho. Bulk nodes keep that under 2%.
  const double floor_level = p.mu.min_value();
  double worst = 0.0;
  int bulk = 0;
  for (int k = 0; k < l.size(); ++k) {
    const Vec2 x = l.node(k);
    if (sample_density(p.mu, x) < 50.0 * floor_level) continue;
    ++bulk;
    worst = std::max(worst, (d.endpoint.at(k) - (x + Vec2(spec.shift, 0.0))).norm());
  }
  MESSAGE(bulk << " bulk nodes, worst deviation " << worst);
  CHECK(bulk > 100);
  CHECK(worst <= 0.05 * spec.shift);
}

}  // TEST_SUITE
