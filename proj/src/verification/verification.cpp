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

#include "liouville/verification/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "liouville/core/error.hpp"
#include "liouville/core/parallel.hpp"
#include "liouville/ot/exact_lp.hpp"
#include "liouville/transport/density_transport.hpp"

namespace liouville {

double l1_distance(const GridDensity& a, const GridDensity& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::kGridMismatch, "L1 distance needs one grid");
  std::vector<double> d(a.size());
  for (int k = 0; k < a.size(); ++k) d[k] = std::abs(a.at(k) - b.at(k));
  return pairwise_sum(d) * a.cell_area();
}

namespace {

int smallest_block(const CellGrid& g, int max_points) {
  for (int k = 1; k <= std::max(g.nx(), g.ny()); ++k) {
    if (g.nx() % k || g.ny() % k) continue;
    if ((g.nx() / k) * (g.ny() / k) <= max_points) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "grid cannot be aggregated below the point budget");
}

}  // namespace

GridW2Estimate grid_w2(const GridDensity& a, const GridDensity& b, int max_points,
                       const SinkhornOptions& options) {
  if (!(a.grid() == b.grid())) throw Error(ErrorCode::kGridMismatch, "W2 estimate needs one grid");
  GridW2Estimate est;
  est.block = smallest_block(a.grid(), max_points);
  const int k = est.block;
  const DivergenceResult fine = sinkhorn_divergence(coarsen(a, k), coarsen(b, k), options);
  est.w2 = fine.w2_estimate;
  est.converged = fine.converged;
  est.points = (a.nx() / k) * (a.ny() / k);
  const int k2 = 2 * k;
  if (a.nx() % k2 == 0 && a.ny() % k2 == 0) {
    const DivergenceResult coarse = sinkhorn_divergence(coarsen(a, k2), coarsen(b, k2), options);
    est.subsampling_error = std::abs(fine.w2_estimate - coarse.w2_estimate);
  }
  return est;
}

SteeringReport verify_steering(const GridDensity& mu, const GridDensity& nu,
                               const FeedbackSchedule& schedule, const VectorFieldFamily& family,
                               double tol_w2, double tol_l1, const FlowOptions& flow) {
  validate_schedule(schedule, family);
  SteeringReport r;
  r.tol_w2 = tol_w2;
  r.tol_l1 = tol_l1;
  const PushforwardResult pushed = pushforward_density(mu, schedule, family, 1.0, flow);
  r.mass_before = pushed.mass_before;
  r.min_det = pushed.min_det;
  r.l1_error = l1_distance(pushed.density, nu);
  r.w2 = grid_w2(pushed.density, nu);
  r.pass = steering_passes(r, tol_w2, tol_l1);
  return r;
}

bool steering_passes(const SteeringReport& report, double tol_w2, double tol_l1) {
  return report.l1_error <= tol_l1 && report.w2.w2 <= tol_w2 && report.min_det > 0.0;
}

namespace {

struct TrialResult {
  double symmetry = 0.0;
  double triangle = 0.0;
  double self = 0.0;
  double translation = 0.0;
  bool cost_symmetric = true;
};

WeightedPoints random_measure(std::mt19937_64& rng) {
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const int n = 2 + static_cast<int>(rng() % 63);
  WeightedPoints m;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    m.points.emplace_back(uniform(), uniform());
    m.weights.push_back(0.1 + uniform());
    total += m.weights.back();
  }
  for (double& w : m.weights) w /= total;
  return m;
}

double exact_w2(const WeightedPoints& a, const WeightedPoints& b) {
  return solve_plan_exact(a, b).w2();
}

}  // namespace

MetricSuiteReport metric_property_suite(std::uint64_t seed, int trials, Vec2 translation) {
  MetricSuiteReport report;
  report.trials = std::max(trials, 0);
  if (report.trials == 0) return report;
  std::vector<TrialResult> results(report.trials);
  parallel_for(report.trials, [&](std::int64_t t) {
    std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(t + 1));
    const WeightedPoints mu = random_measure(rng), nu = random_measure(rng), la = random_measure(rng);
    TrialResult& r = results[t];
    const double mn = exact_w2(mu, nu), nm = exact_w2(nu, mu);
    const double nl = exact_w2(nu, la), ml = exact_w2(mu, la);
    r.symmetry = std::abs(mn - nm);
    r.triangle = std::max(0.0, ml - mn - nl);
    r.self = exact_w2(mu, mu);
    WeightedPoints shifted = mu;
    for (Vec2& p : shifted.points) p += translation;
    r.translation = std::abs(exact_w2(mu, shifted) - translation.norm());
    for (int i = 0; i < mu.size(); ++i)
      for (int j = 0; j < nu.size(); ++j)
        if ((mu.points[i] - nu.points[j]).squaredNorm() != (nu.points[j] - mu.points[i]).squaredNorm())
          r.cost_symmetric = false;
  });
  for (const TrialResult& r : results) {
    report.max_symmetry_violation = std::max(report.max_symmetry_violation, r.symmetry);
    report.max_triangle_violation = std::max(report.max_triangle_violation, r.triangle);
    report.max_self_distance = std::max(report.max_self_distance, r.self);
    report.max_translation_violation = std::max(report.max_translation_violation, r.translation);
    report.cost_matrix_symmetric = report.cost_matrix_symmetric && r.cost_symmetric;
  }
  report.pass = report.cost_matrix_symmetric && report.max_symmetry_violation <= 1e-9 &&
                report.max_triangle_violation <= 1e-9 && report.max_self_distance <= 1e-9 &&
                report.max_translation_violation <= 1e-9;
  return report;
}

nlohmann::json steering_report_to_json(const SteeringReport& r) {
  return {{"format", "VR1"},
          {"kind", "steering"},
          {"pass", r.pass},
          {"l1Error", r.l1_error},
          {"tolL1", r.tol_l1},
          {"w2", r.w2.w2},
          {"tolW2", r.tol_w2},
          {"w2SubsamplingError", r.w2.subsampling_error},
          {"w2Block", r.w2.block},
          {"w2Points", r.w2.points},
          {"w2Converged", r.w2.converged},
          {"massBeforeRenormalization", r.mass_before},
          {"massDrift", 1.0 / r.mass_before},
          {"minDetJacobian", r.min_det}};
}

nlohmann::json metric_report_to_json(const MetricSuiteReport& r) {
  return {{"format", "VR1"},
          {"kind", "metric-suite"},
          {"pass", r.pass},
          {"trials", r.trials},
          {"maxSymmetryViolation", r.max_symmetry_violation},
          {"maxTriangleViolation", r.max_triangle_violation},
          {"maxSelfDistance", r.max_self_distance},
          {"maxTranslationViolation", r.max_translation_violation},
          {"costMatrixSymmetric", r.cost_matrix_symmetric}};
}

}  // namespace liouville
