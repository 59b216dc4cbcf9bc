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

#include "liouville/transport/density_transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "liouville/core/error.hpp"
#include "liouville/core/parallel.hpp"

namespace liouville {

PushforwardResult pushforward_density(const GridDensity& rho0, const FeedbackSchedule& schedule,
                                      const VectorFieldFamily& family, double t,
                                      const FlowOptions& flow, const PushforwardOptions& options) {
  if (t == 0.0 || schedule.is_zero()) return PushforwardResult{rho0, rho0.mass(), 1.0};

  const CellGrid& grid = rho0.grid();
  std::vector<double> values(grid.size());
  std::vector<double> dets(grid.size());
  parallel_for(grid.size(), [&](std::int64_t k) {
    const Vec2 x = grid.center(static_cast<int>(k));
    const Vec2 z = invert_flow(schedule, family, x, t, flow);
    const FlowPoint p = integrate_flow_with_jacobian(schedule, family, z, t, flow);
    const double det = p.jacobian.determinant();
    dets[k] = det;
    values[k] = sample_density(rho0, z) / det;
  });

  PushforwardResult r{GridDensity(grid, values), 1.0, 1.0};
  r.mass_before = pairwise_sum(values) * grid.cell_area();
  r.min_det = *std::min_element(dets.begin(), dets.end());
  if (!(r.mass_before > 0.0) || !std::isfinite(r.mass_before))
    throw Error(ErrorCode::kExcessiveMassDrift, "pushed density has no mass");
  if (std::abs(r.mass_drift() - 1.0) > options.max_mass_drift)
    throw Error(ErrorCode::kExcessiveMassDrift,
                "mass drift " + std::to_string(r.mass_drift()) + " exceeds tolerance");
  const double scale = 1.0 / r.mass_before;
  for (double& v : values) v *= scale;
  r.density = GridDensity(grid, std::move(values));
  return r;
}

WeightedPoints pushforward_particles(const WeightedPoints& samples,
                                     const FeedbackSchedule& schedule,
                                     const VectorFieldFamily& family, double t,
                                     const FlowOptions& flow) {
  WeightedPoints out = samples;
  if (t == 0.0 || schedule.is_zero()) return out;
  parallel_for(samples.size(), [&](std::int64_t k) {
    out.points[k] = integrate_flow(schedule, family, samples.points[k], t, flow);
  });
  return out;
}

DensitySeries simulate_series(const GridDensity& rho0, const FeedbackSchedule& schedule,
                              const VectorFieldFamily& family, const std::vector<double>& times,
                              const FlowOptions& flow) {
  DensitySeries s;
  for (double t : times) {
    s.times.push_back(t);
    s.frames.push_back(pushforward_density(rho0, schedule, family, t, flow).density);
  }
  return s;
}

double continuity_residual(const DensitySeries& series, const FeedbackSchedule& schedule,
                           const VectorFieldFamily& family) {
  const int n = static_cast<int>(series.frames.size());
  if (n < 3 || static_cast<int>(series.times.size()) != n)
    throw Error(ErrorCode::kGridMismatch, "residual needs at least three frames with times");
  const CellGrid& grid = series.frames[0].grid();
  for (const GridDensity& f : series.frames)
    if (!(f.grid() == grid)) throw Error(ErrorCode::kGridMismatch, "frames on different grids");
  const double dt = (series.times.back() - series.times.front()) / (n - 1);
  if (!(dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "times must increase");
  for (int k = 0; k < n; ++k)
    if (std::abs(series.times[k] - (series.times.front() + k * dt)) > 1e-9 * (1.0 + dt))
      throw Error(ErrorCode::kInvalidArgument, "times must be uniformly spaced");

  const int nx = grid.nx(), ny = grid.ny();
  double worst = 0.0;
  std::vector<Vec2> flux(grid.size());
  for (int k = 1; k + 1 < n; ++k) {
    const GridDensity& rho = series.frames[k];
    parallel_for(grid.size(), [&](std::int64_t c) {
      const Vec2 x = grid.center(static_cast<int>(c));
      flux[c] = rho.at(static_cast<int>(c)) * schedule_velocity(schedule, family, series.times[k], x);
    });
    for (int j = 1; j + 1 < ny; ++j) {
      for (int i = 1; i + 1 < nx; ++i) {
        const int c = grid.index(i, j);
        const double drho =
            (series.frames[k + 1].at(c) - series.frames[k - 1].at(c)) / (2.0 * dt);
        const double div = (flux[grid.index(i + 1, j)].x() - flux[grid.index(i - 1, j)].x()) /
                               (2.0 * grid.dx()) +
                           (flux[grid.index(i, j + 1)].y() - flux[grid.index(i, j - 1)].y()) /
                               (2.0 * grid.dy());
        worst = std::max(worst, std::abs(drho + div));
      }
    }
  }
  return worst;
}

WeightedPoints sample_particles(const GridDensity& density, int n, unsigned long long seed) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one particle");
  std::vector<double> cdf(density.size());
  double acc = 0.0;
  for (int k = 0; k < density.size(); ++k) {
    acc += std::max(density.at(k), 0.0);
    cdf[k] = acc;
  }
  if (!(acc > 0.0)) throw Error(ErrorCode::kZeroMass, "cannot sample a zero density");
  // Uniform doubles from raw 64-bit draws, so the stream is the same on
  // every standard library.
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const CellGrid& g = density.grid();
  WeightedPoints out;
  out.points.reserve(n);
  out.weights.assign(n, 1.0 / n);
  for (int s = 0; s < n; ++s) {
    const double u = uniform() * acc;
    int k = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    k = std::min(k, density.size() - 1);
    const Vec2 c = g.center(k);
    out.points.emplace_back(c.x() + (uniform() - 0.5) * g.dx(), c.y() + (uniform() - 0.5) * g.dy());
  }
  return out;
}

}  // namespace liouville
