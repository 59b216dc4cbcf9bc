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

#include "liouville/ot/sinkhorn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "liouville/core/error.hpp"

namespace liouville {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> log_weights(const std::vector<double>& w) {
  std::vector<double> out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) out[k] = w[k] > 0.0 ? std::log(w[k]) : kNegInf;
  return out;
}

void check_weights(const WeightedPoints& p) {
  for (double w : p.weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw Error(ErrorCode::kWeightMismatch, "weights must be finite and nonnegative");
  if (std::abs(p.total_weight() - 1.0) > 1e-9)
    throw Error(ErrorCode::kWeightMismatch, "weights must sum to 1");
}

// sum_k w_k v_k over entries with positive weight.
double weighted_sum(const std::vector<double>& w, const std::vector<double>& v) {
  std::vector<double> t(w.size(), 0.0);
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k] > 0.0) t[k] = w[k] * v[k];
  return pairwise_sum(t);
}

}  // namespace

double default_sinkhorn_eps(const Domain& domain) {
  return 1e-3 * domain.diameter() * domain.diameter();
}

SinkhornResult solve_sinkhorn(std::shared_ptr<const LogKernel> kernel, WeightedPoints source,
                              WeightedPoints target, double diameter,
                              const SinkhornOptions& options) {
  const LogKernel& k = *kernel;
  if (k.rows() != source.size() || k.cols() != target.size())
    throw Error(ErrorCode::kInvalidArgument, "kernel does not match the point sets");
  check_weights(source);
  check_weights(target);
  const double target_eps = options.eps > 0.0 ? options.eps : 1e-3 * diameter * diameter;
  if (!(target_eps > 0.0) || !std::isfinite(target_eps))
    throw Error(ErrorCode::kInvalidArgument, "sinkhorn eps must be positive");

  std::vector<double> eps_ladder;
  for (double e = diameter * diameter / 8.0; e > target_eps; e *= 0.5) eps_ladder.push_back(e);
  eps_ladder.push_back(target_eps);

  const int m = k.rows(), n = k.cols();
  const std::vector<double>& a = source.weights;
  const std::vector<double>& b = target.weights;
  const std::vector<double> log_a = log_weights(a), log_b = log_weights(b);
  std::vector<double> f(m, 0.0), g(n, 0.0), p(m), h(n), s(m);

  SinkhornResult result{TransportPlan::from_entries(source, target, {}), target_eps, 0, 0.0,
                        false, 0.0, 0.0, {}};
  int total = 0;
  bool budget_left = true;
  double state_eps = eps_ladder.front();  // eps the potentials p, h were formed with
  for (std::size_t level = 0; level < eps_ladder.size() && budget_left; ++level) {
    const double eps = eps_ladder[level];
    const bool last = level + 1 == eps_ladder.size();
    const double tol = last ? options.tolerance : options.level_tolerance;
    SinkhornLevel info;
    info.eps = eps;
    double violation = std::numeric_limits<double>::infinity();
    for (;;) {
      if (total >= options.max_iterations) {
        budget_left = false;
        break;
      }
      ++total;
      ++info.iterations;
      for (int i = 0; i < m; ++i) p[i] = f[i] + eps * log_a[i];
      state_eps = eps;
      k.softmin_cols(p, eps, g);
      for (int j = 0; j < n; ++j) h[j] = g[j] + eps * log_b[j];
      k.softmin_rows(h, eps, s);
      // Columns are now exact; row sums are a_i exp((f_i - s_i) / eps).
      std::vector<double> dev(m, 0.0);
      for (int i = 0; i < m; ++i)
        if (a[i] > 0.0) dev[i] = std::abs(a[i] * std::expm1((f[i] - s[i]) / eps));
      violation = pairwise_sum(dev);
      if (violation < tol) break;
      f.swap(s);
    }
    info.marginal_violation = violation;
    info.entropic_cost = weighted_sum(a, f) + weighted_sum(b, g);
    if (info.iterations == 0 && level > 0) break;
    GibbsCoupling coupling{kernel, p, h, state_eps};
    TransportPlan plan = TransportPlan::from_gibbs(source, target, std::move(coupling));
    info.transport_cost = plan.cost();
    result.ladder.push_back(info);
    result.plan = std::move(plan);
    result.eps = state_eps;
    result.marginal_violation = violation;
    result.converged = last && budget_left;
    result.transport_cost = info.transport_cost;
    result.entropic_cost = info.entropic_cost;
  }
  result.iterations = total;
  return result;
}

SinkhornResult solve_plan_sinkhorn(const GridDensity& mu, const GridDensity& nu,
                                   const SinkhornOptions& options) {
  if (mu.min_value() <= 0.0 || nu.min_value() <= 0.0)
    throw Error(ErrorCode::kNegativeDensity, "sinkhorn needs strictly positive densities");
  const Domain& d = mu.domain();
  Vec2 lo = d.lower().cwiseMin(nu.domain().lower());
  Vec2 hi = d.upper().cwiseMax(nu.domain().upper());
  return solve_sinkhorn(make_grid_kernel(mu.grid(), nu.grid()), to_weighted_points(mu),
                        to_weighted_points(nu), (hi - lo).norm(), options);
}

namespace {

DivergenceResult combine(const SinkhornResult& ab, const SinkhornResult& aa,
                         const SinkhornResult& bb) {
  DivergenceResult r;
  r.divergence = ab.entropic_cost - 0.5 * aa.entropic_cost - 0.5 * bb.entropic_cost;
  r.w2_estimate = std::sqrt(std::max(r.divergence, 0.0));
  r.converged = ab.converged && aa.converged && bb.converged;
  r.iterations = ab.iterations + aa.iterations + bb.iterations;
  return r;
}

}  // namespace

DivergenceResult sinkhorn_divergence(const GridDensity& a, const GridDensity& b,
                                     const SinkhornOptions& options) {
  const Vec2 lo = a.domain().lower().cwiseMin(b.domain().lower());
  const Vec2 hi = a.domain().upper().cwiseMax(b.domain().upper());
  const double diam = (hi - lo).norm();
  SinkhornOptions o = options;
  if (!(o.eps > 0.0)) o.eps = 1e-3 * diam * diam;
  auto run = [&](const GridDensity& x, const GridDensity& y) {
    return solve_sinkhorn(make_grid_kernel(x.grid(), y.grid()), to_weighted_points(x),
                          to_weighted_points(y), diam, o);
  };
  return combine(run(a, b), run(a, a), run(b, b));
}

DivergenceResult sinkhorn_divergence(const WeightedPoints& a, const WeightedPoints& b,
                                     double diameter, const SinkhornOptions& options) {
  auto run = [&](const WeightedPoints& x, const WeightedPoints& y) {
    return solve_sinkhorn(make_dense_kernel(x.points, y.points), x, y, diameter, options);
  };
  return combine(run(a, b), run(a, a), run(b, b));
}

}  // namespace liouville
