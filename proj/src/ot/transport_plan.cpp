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

#include "liouville/ot/transport_plan.hpp"

#include <algorithm>
#include <cmath>

#include "liouville/core/error.hpp"

namespace liouville {

TransportPlan TransportPlan::from_entries(WeightedPoints source, WeightedPoints target,
                                          std::vector<PlanEntry> entries) {
  TransportPlan p;
  std::sort(entries.begin(), entries.end(), [](const PlanEntry& a, const PlanEntry& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  std::vector<double> terms;
  terms.reserve(entries.size());
  for (const PlanEntry& e : entries) {
    if (e.i < 0 || e.i >= source.size() || e.j < 0 || e.j >= target.size())
      throw Error(ErrorCode::kInvalidArgument, "plan entry index out of range");
    terms.push_back(e.mass * (source.points[e.i] - target.points[e.j]).squaredNorm());
  }
  p.cost_ = pairwise_sum(terms);
  p.source_ = std::move(source);
  p.target_ = std::move(target);
  p.entries_ = std::move(entries);
  return p;
}

TransportPlan TransportPlan::from_gibbs(WeightedPoints source, WeightedPoints target,
                                        GibbsCoupling coupling) {
  TransportPlan p;
  const LogKernel& k = *coupling.kernel;
  std::vector<LogKernel::RowStats> stats(k.rows());
  k.row_stats(coupling.row_potential, coupling.col_potential, coupling.eps, stats);
  std::vector<double> terms(k.rows());
  for (int i = 0; i < k.rows(); ++i)
    terms[i] = std::isfinite(stats[i].log_mass) ? std::exp(stats[i].log_mass) * stats[i].cost : 0.0;
  p.cost_ = pairwise_sum(terms);
  p.source_ = std::move(source);
  p.target_ = std::move(target);
  p.gibbs_ = std::make_shared<const GibbsCoupling>(std::move(coupling));
  return p;
}

double TransportPlan::w2() const { return std::sqrt(std::max(cost_, 0.0)); }

std::vector<double> TransportPlan::row_sums() const {
  std::vector<double> r(source_.size(), 0.0);
  if (!gibbs_) {
    for (const PlanEntry& e : entries_) r[e.i] += e.mass;
    return r;
  }
  const LogKernel& k = *gibbs_->kernel;
  std::vector<LogKernel::RowStats> stats(k.rows());
  k.row_stats(gibbs_->row_potential, gibbs_->col_potential, gibbs_->eps, stats);
  for (int i = 0; i < k.rows(); ++i) r[i] = std::exp(stats[i].log_mass);
  return r;
}

std::vector<double> TransportPlan::col_sums() const {
  std::vector<double> c(target_.size(), 0.0);
  if (!gibbs_) {
    for (const PlanEntry& e : entries_) c[e.j] += e.mass;
    return c;
  }
  const LogKernel& k = *gibbs_->kernel;
  std::vector<double> s(k.cols());
  k.softmin_cols(gibbs_->row_potential, gibbs_->eps, s);
  for (int j = 0; j < k.cols(); ++j) {
    const double h = gibbs_->col_potential[j];
    c[j] = std::isfinite(h) ? std::exp((h - s[j]) / gibbs_->eps) : 0.0;
  }
  return c;
}

double TransportPlan::marginal_violation() const {
  const std::vector<double> r = row_sums(), c = col_sums();
  std::vector<double> dr(r.size()), dc(c.size());
  for (std::size_t i = 0; i < r.size(); ++i) dr[i] = std::abs(r[i] - source_.weights[i]);
  for (std::size_t j = 0; j < c.size(); ++j) dc[j] = std::abs(c[j] - target_.weights[j]);
  return std::max(pairwise_sum(dr), pairwise_sum(dc));
}

std::vector<Vec2> TransportPlan::row_means() const {
  std::vector<Vec2> m(source_.size(), Vec2::Zero());
  if (!gibbs_) {
    std::vector<double> w(source_.size(), 0.0);
    for (const PlanEntry& e : entries_) {
      m[e.i] += e.mass * target_.points[e.j];
      w[e.i] += e.mass;
    }
    for (int i = 0; i < source_.size(); ++i) {
      if (!(w[i] > 0.0)) throw Error(ErrorCode::kEmptyRow, "plan row " + std::to_string(i) + " is empty");
      m[i] /= w[i];
    }
    return m;
  }
  const LogKernel& k = *gibbs_->kernel;
  std::vector<LogKernel::RowStats> stats(k.rows());
  k.row_stats(gibbs_->row_potential, gibbs_->col_potential, gibbs_->eps, stats);
  for (int i = 0; i < k.rows(); ++i) {
    if (!std::isfinite(stats[i].log_mass) || std::exp(stats[i].log_mass) <= 0.0)
      throw Error(ErrorCode::kEmptyRow, "plan row " + std::to_string(i) + " is empty");
    m[i] = stats[i].mean;
  }
  return m;
}

void TransportPlan::for_each_entry(double threshold,
                                   const std::function<void(int, int, double)>& visit) const {
  if (!gibbs_) {
    for (const PlanEntry& e : entries_)
      if (e.mass > threshold) visit(e.i, e.j, e.mass);
    return;
  }
  const LogKernel& k = *gibbs_->kernel;
  const double eps = gibbs_->eps;
  for (int i = 0; i < k.rows(); ++i) {
    const double p = gibbs_->row_potential[i];
    if (!std::isfinite(p)) continue;
    for (int j = 0; j < k.cols(); ++j) {
      const double g = std::exp((p + gibbs_->col_potential[j] - k.cost(i, j)) / eps);
      if (g > threshold) visit(i, j, g);
    }
  }
}

}  // namespace liouville
