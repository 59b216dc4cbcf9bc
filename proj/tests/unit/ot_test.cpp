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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "liouville/core/error.hpp"
#include "liouville/ot/exact_lp.hpp"
#include "liouville/ot/map_recovery.hpp"
#include "liouville/ot/quantile_1d.hpp"
#include "liouville/ot/sinkhorn.hpp"
#include "liouville/verification/test_densities.hpp"

using namespace liouville;

namespace {

WeightedPoints uniform_points(std::vector<Vec2> p) {
  WeightedPoints w;
  w.weights.assign(p.size(), 1.0 / p.size());
  w.points = std::move(p);
  return w;
}

// Minimum of sum |x_i - y_s(i)|^2 / n over all permutations s.
double brute_force_assignment(const std::vector<Vec2>& x, const std::vector<Vec2>& y) {
  std::vector<int> s(x.size());
  std::iota(s.begin(), s.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) c += (x[i] - y[s[i]]).squaredNorm();
    best = std::min(best, c / x.size());
  } while (std::next_permutation(s.begin(), s.end()));
  return best;
}

double normal_cdf(double z) { return 0.5 * (1.0 + std::erf(z / std::sqrt(2.0))); }

// Inverse CDF of N(m, s^2) truncated to [0, 1], by bisection.
double truncated_normal_quantile(double m, double s, double u) {
  const double lo = normal_cdf(-m / s), hi = normal_cdf((1.0 - m) / s);
  double a = 0.0, b = 1.0;
  for (int k = 0; k < 100; ++k) {
    const double c = 0.5 * (a + b);
    ((normal_cdf((c - m) / s) - lo) / (hi - lo) < u ? a : b) = c;
  }
  return 0.5 * (a + b);
}

std::vector<double> normal_cells(double m, double s, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) / n;
    v[i] = std::exp(-0.5 * (x - m) * (x - m) / (s * s));
  }
  return v;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_SUITE("ot") {

TEST_CASE("exact plan of identical point sets is diagonal") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  WeightedPoints a;
  double total = 0.0;
  for (int i = 0; i < 20; ++i) {
    a.points.emplace_back(u(rng), u(rng));
    a.weights.push_back(0.5 + u(rng));
    total += a.weights.back();
  }
  for (double& w : a.weights) w /= total;
  const TransportPlan p = solve_plan_exact(a, a);
  CHECK(p.cost() == 0.0);
  p.for_each_entry(0.0, [](int i, int j, double) { CHECK(i == j); });
  CHECK(p.marginal_violation() <= 1e-9);
  const auto t = barycentric_map(p);
  for (int i = 0; i < a.size(); ++i) CHECK((t[i] - a.points[i]).norm() < 1e-15);
}

TEST_CASE("exact plan of a Dirac pair") {
  const WeightedPoints a = uniform_points({Vec2(0.1, 0.2)});
  const WeightedPoints b = uniform_points({Vec2(0.4, 0.6)});
  const TransportPlan p = solve_plan_exact(a, b);
  CHECK(p.w2() == doctest::Approx(0.5).epsilon(1e-15));
  REQUIRE(p.entries().size() == 1);
  CHECK(p.entries()[0].mass == 1.0);
  CHECK(barycentric_map(p)[0] == Vec2(0.4, 0.6));
}

TEST_CASE("exact plan matches brute force on small assignments") {
  const std::vector<Vec2> x = {Vec2(0, 0), Vec2(1, 0), Vec2(2, 0), Vec2(3, 0)};
  const std::vector<Vec2> y = {Vec2(4, 0), Vec2(2, 0), Vec2(3, 0), Vec2(1, 0)};
  CHECK(brute_force_assignment(x, y) == doctest::Approx(1.0));
  ExactSolverOptions o;
  CHECK(solve_plan_exact(uniform_points(x), uniform_points(y), o).cost() ==
        doctest::Approx(1.0).epsilon(1e-12));

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec2> a(6), b(6);
    for (auto& p : a) p = Vec2(u(rng), u(rng));
    for (auto& p : b) p = Vec2(u(rng), u(rng));
    const TransportPlan plan = solve_plan_exact(uniform_points(a), uniform_points(b));
    CHECK(plan.cost() == doctest::Approx(brute_force_assignment(a, b)).epsilon(1e-12));
    CHECK(plan.marginal_violation() <= 1e-9);
  }
}

TEST_CASE("exact plan beats every sampled coupling on unequal weights") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  WeightedPoints a, b;
  for (int i = 0; i < 40; ++i) {
    a.points.emplace_back(u(rng), u(rng));
    a.weights.push_back(u(rng) + 0.1);
  }
  for (int i = 0; i < 30; ++i) {
    b.points.emplace_back(u(rng), u(rng));
    b.weights.push_back(u(rng) + 0.1);
  }
  for (auto* w : {&a, &b}) {
    const double t = std::accumulate(w->weights.begin(), w->weights.end(), 0.0);
    for (double& x : w->weights) x /= t;
  }
  const TransportPlan exact = solve_plan_exact(a, b);
  CHECK(exact.marginal_violation() <= 1e-9);
  // The product coupling and a converged entropic plan are feasible, so
  // neither can be cheaper.
  double product = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      product += a.weights[i] * b.weights[j] * (a.points[i] - b.points[j]).squaredNorm();
  CHECK(exact.cost() <= product);
  SinkhornOptions so;
  so.eps = 1e-4;
  const SinkhornResult s = solve_sinkhorn(make_dense_kernel(a.points, b.points), a, b, std::sqrt(2.0), so);
  CHECK(s.converged);
  CHECK(exact.cost() <= s.transport_cost + 1e-6);
  CHECK(s.transport_cost - exact.cost() <= 0.05 * exact.cost());
}

TEST_CASE("exact solver input errors") {
  std::vector<Vec2> many(600, Vec2(0.5, 0.5));
  CHECK(code_of([&] { solve_plan_exact(uniform_points(many), uniform_points({Vec2(0, 0)})); }) ==
        ErrorCode::kSizeExceeded);
  WeightedPoints bad = uniform_points({Vec2(0, 0), Vec2(1, 1)});
  bad.weights[0] = 0.7;
  CHECK(code_of([&] { solve_plan_exact(bad, uniform_points({Vec2(0, 0)})); }) ==
        ErrorCode::kWeightMismatch);
}

TEST_CASE("translation of a uniform cloud costs exactly |c|^2") {
  std::vector<Vec2> x, y;
  const Vec2 c(0.3, -0.1);
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 6; ++i) {
      x.emplace_back(i / 6.0, j / 6.0);
      y.push_back(x.back() + c);
    }
  const TransportPlan p = solve_plan_exact(uniform_points(x), uniform_points(y));
  CHECK(std::abs(p.w2() - c.norm()) <= 1e-9);
}

TEST_CASE("sinkhorn on equal marginals") {
  const CellGrid g(Domain::unit(), 32, 32);
  const GridDensity mu = gaussian_bump(g, Vec2(0.5, 0.5), 0.2, 0.2);
  const SinkhornResult r = solve_plan_sinkhorn(mu, mu);
  CHECK(r.converged);
  CHECK(r.eps == doctest::Approx(default_sinkhorn_eps(Domain::unit())));
  CHECK(r.marginal_violation < 1e-7);
  CHECK(r.plan.marginal_violation() < 1e-7);
  CHECK(r.transport_cost <= 2.0 * r.eps * std::log(static_cast<double>(g.size())));
}

TEST_CASE("sinkhorn cost is close to the exact cost on separated bumps") {
  const CellGrid g(Domain::unit(), 32, 32);
  const GridDensity mu = gaussian_bump(g, Vec2(0.3, 0.3), 0.08, 1e-3);
  const GridDensity nu = gaussian_bump(g, Vec2(0.7, 0.65), 0.08, 1e-3);
  const SinkhornResult s = solve_plan_sinkhorn(mu, nu);
  CHECK(s.converged);
  const TransportPlan exact =
      solve_plan_exact(to_weighted_points(coarsen(mu, 2)), to_weighted_points(coarsen(nu, 2)));
  MESSAGE("sinkhorn " << s.transport_cost << ", exact " << exact.cost());
  CHECK(std::abs(s.transport_cost - exact.cost()) <= 0.02 * exact.cost());
}

TEST_CASE("entropic cost decreases along the eps ladder") {
  const DensityPair p = bump_pair(BumpPairSpec{32});
  const SinkhornResult s = solve_plan_sinkhorn(p.mu, p.nu);
  REQUIRE(s.ladder.size() >= 3);
  for (std::size_t k = 1; k < s.ladder.size(); ++k) {
    CHECK(s.ladder[k].eps < s.ladder[k - 1].eps);
    CHECK(s.ladder[k].entropic_cost <= s.ladder[k - 1].entropic_cost + 1e-9);
  }
}

TEST_CASE("quantile map on identical densities is the identity") {
  const std::vector<double> v = normal_cells(0.5, 0.2, 50);
  const QuantileMap1D q = quantile_map_1d(0.0, 1.0, v, v);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(q.map[i] - q.centers[i]) < 1e-12);
  CHECK(q.cost < 1e-20);
}

TEST_CASE("quantile map of a translated uniform density") {
  // Uniform on [0, 1] and on [0.2, 1.2], with a negligible floor elsewhere
  // so both stay strictly positive on the shared interval.
  const int n = 1200;
  const double tiny = 1e-13;
  std::vector<double> mu(n), nu(n);
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * 1.2 / n;
    mu[i] = x < 1.0 ? 1.0 : tiny;
    nu[i] = x > 0.2 ? 1.0 : tiny;
  }
  const QuantileMap1D q = quantile_map_1d(0.0, 1.2, mu, nu);
  CHECK(q.cost == doctest::Approx(0.04).epsilon(1e-6));
  for (int i = 0; i < n; ++i)
    if (q.centers[i] < 0.99) CHECK(std::abs(q.map[i] - q.centers[i] - 0.2) < 1e-9);
}

TEST_CASE("quantile cost of truncated normals matches quadrature") {
  const int n = 4096;
  const QuantileMap1D q =
      quantile_map_1d(0.0, 1.0, normal_cells(0.4, 0.1, n), normal_cells(0.6, 0.15, n));
  // W2^2 = int_0^1 |F^{-1}(u) - G^{-1}(u)|^2 du by the midpoint rule.
  const int m = 20000;
  double oracle = 0.0;
  for (int k = 0; k < m; ++k) {
    const double u = (k + 0.5) / m;
    const double d = truncated_normal_quantile(0.4, 0.1, u) - truncated_normal_quantile(0.6, 0.15, u);
    oracle += d * d / m;
  }
  MESSAGE("quantile " << q.cost << ", quadrature " << oracle << ", untruncated " << 0.2 * 0.2 + 0.05 * 0.05);
  CHECK(std::abs(q.cost - oracle) <= 1e-3);
  // The evaluator agrees with the tabulated map.
  for (int i : {0, 100, 2048, 4095})
    CHECK(quantile_map_eval(0.0, 1.0, normal_cells(0.4, 0.1, n), normal_cells(0.6, 0.15, n),
                            q.centers[i]) == doctest::Approx(q.map[i]).epsilon(1e-12));
}

TEST_CASE("quantile map rejects nonpositive input") {
  const std::vector<double> ok = {1.0, 1.0}, bad = {1.0, 0.0};
  CHECK(code_of([&] { quantile_map_1d(0.0, 1.0, ok, bad); }) == ErrorCode::kNonPositive1D);
}

TEST_CASE("sinkhorn on product grids agrees with the 1D solution") {
  const CellGrid g(Domain::unit(), 64, 4);
  const GridDensity mu = gaussian_profile_x(g, 0.38, 0.12, 0.1);
  const GridDensity nu = gaussian_profile_x(g, 0.62, 0.1, 0.1);
  std::vector<double> a(64), b(64);
  for (int i = 0; i < 64; ++i) {
    a[i] = mu.at(i, 0);
    b[i] = nu.at(i, 0);
  }
  const QuantileMap1D q = quantile_map_1d(0.0, 1.0, a, b);

  // The entropic blur adds about eps to the transport cost, so the 1%
  // comparison runs at a small eps.
  SinkhornOptions fine;
  fine.eps = 1e-4;
  const SinkhornResult sf = solve_plan_sinkhorn(mu, nu, fine);
  CHECK(sf.converged);
  MESSAGE("sinkhorn " << sf.transport_cost << ", quantile " << q.cost);
  CHECK(std::abs(sf.transport_cost - q.cost) <= 0.01 * q.cost);
  const MapTable t = barycentric_map(sf.plan, g);
  double worst = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 64; ++i) worst = std::max(worst, std::abs(t.at(i, j).x() - q.map[i]));
  MESSAGE("barycentric sup deviation " << worst);
  CHECK(worst <= 0.02);
}

TEST_CASE("monotonicity probes") {
  const NodeLattice l = NodeLattice::centers(CellGrid(Domain::unit(), 32, 32));
  const MonotonicityReport id = check_monotone(MapTable::identity(l), 2000, 3);
  CHECK(id.violations == 0);
  CHECK(id.min_pairing > 0.0);
  CHECK(id.probes == 2000);
  const MonotonicityReport flip =
      check_monotone(MapTable::from_function(l, [](const Vec2& x) { return Vec2(-x.x(), x.y()); }),
                     2000, 3);
  CHECK(flip.violations > 800);
  CHECK(flip.violations < 1200);
}

TEST_CASE("barycentric map of a converged plan is monotone") {
  const DensityPair p = bump_pair(BumpPairSpec{32});
  const SinkhornResult s = solve_plan_sinkhorn(p.mu, p.nu);
  CHECK(s.converged);
  const MonotonicityReport r = check_monotone(barycentric_map(s.plan, p.mu.grid()), 5000, 9);
  CHECK(r.violations == 0);

  // Same for the exact plan at 256 points, whose pairs are nodes of the
  // coarse grid.
  const GridDensity a = coarsen(p.mu, 2), b = coarsen(p.nu, 2);
  const TransportPlan exact = solve_plan_exact(to_weighted_points(a), to_weighted_points(b));
  const std::vector<Vec2> t = barycentric_map(exact);
  const auto pts = to_weighted_points(a).points;
  int bad = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if ((t[i] - t[k]).dot(pts[i] - pts[k]) < -1e-6 * (pts[i] - pts[k]).squaredNorm()) ++bad;
  CHECK(bad == 0);
}

TEST_CASE("plans report row and column sums") {
  const DensityPair p = bump_pair(BumpPairSpec{16});
  const SinkhornResult s = solve_plan_sinkhorn(p.mu, p.nu);
  const auto rows = s.plan.row_sums(), cols = s.plan.col_sums();
  const auto a = to_weighted_points(p.mu).weights, b = to_weighted_points(p.nu).weights;
  double dr = 0.0, dc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dr += std::abs(rows[i] - a[i]);
  for (std::size_t j = 0; j < b.size(); ++j) dc += std::abs(cols[j] - b[j]);
  CHECK(std::max(dr, dc) == doctest::Approx(s.plan.marginal_violation()).epsilon(1e-9));
  CHECK(std::max(dr, dc) < 1e-7);
}

}  // TEST_SUITE
