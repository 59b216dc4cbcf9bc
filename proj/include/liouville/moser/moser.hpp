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

#pragma once

#include <memory>
#include <vector>

#include "liouville/core/grid.hpp"
#include "liouville/core/isotopy.hpp"
#include "liouville/core/lattice.hpp"
#include "liouville/core/velocity_field.hpp"
#include "liouville/flow/flow_engine.hpp"
#include "liouville/moser/poisson.hpp"

namespace liouville {

// Velocity w(t, x) = -grad u / ((1 - t) rho_mu + t rho_nu) with
// Lap u = rho_nu - rho_mu; its flow carries rho_mu through the linear
// interpolation to rho_nu. Both densities must be strictly positive on the
// same grid (kNegativeDensity / kGridMismatch otherwise).
PotentialVelocityField moser_interpolation_field(const GridDensity& rho_mu,
                                                 const GridDensity& rho_nu,
                                                 const PoissonOptions& options = {});

// H(t, x): flow of the Moser field from time 0 to t.
class MoserIsotopy final : public IsotopyPath {
 public:
  MoserIsotopy(std::shared_ptr<const PotentialVelocityField> field, double step);

  IsotopyMethod method() const override { return IsotopyMethod::kMoserTimeRescaled; }
  Vec2 evaluate(double t, const Vec2& x) const override;
  Mat2 jacobian(double t, const Vec2& x) const override;
  // Integrates the field from t0 to t1 directly (no inversion needed).
  Vec2 transition(double t0, double t1, const Vec2& y) const override;

  const std::shared_ptr<const PotentialVelocityField>& field() const { return field_; }
  double step() const { return step_; }

  // Trajectory from (t0, x) to t1 with the variational matrix.
  Vec2 integrate(double t0, double t1, const Vec2& x, Mat2* jacobian) const;

 private:
  std::shared_ptr<const PotentialVelocityField> field_;
  double step_;
};

struct MoserDiffeo {
  std::shared_ptr<const MoserIsotopy> isotopy;
  MapTable endpoint;          // H(1, .) on the vertex lattice
  ScalarTable endpoint_det;   // det D H(1, .) on the same nodes
  std::vector<double> checkpoint_times;     // 0.25, 0.5, 0.75, 1
  std::vector<double> checkpoint_min_det;   // min over nodes at each
};

struct MoserOptions {
  double step = 1e-3;
  PoissonOptions poisson;
};

// Integrates the Moser field from every vertex of the grid over [0, 1].
// Errors: kOrientationLoss, kBlowUp, and those of the field construction.
MoserDiffeo build_moser_diffeo(const GridDensity& rho_mu, const GridDensity& rho_nu,
                               const MoserOptions& options = {});

}  // namespace liouville
