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

#include "liouville/core/grid.hpp"

namespace liouville {

struct PoissonOptions {
  double tolerance = 1e-8;      // on ||Lap_h u - g||_inf
  double compatibility = 1e-8;  // on |integral of g|
  int max_iterations = 0;       // 0: 10 * number of cells
};

struct PoissonSolution {
  CellField potential;
  double residual = 0.0;
  int iterations = 0;
};

// Five-point Laplacian with homogeneous Neumann conditions (ghost-cell
// reflection), solved by conjugate gradients on the zero-mean subspace.
// The returned potential has zero mean.
// Errors: kIncompatibleSource, kNonConvergence.
PoissonSolution solve_poisson_neumann(const CellField& source,
                                      const PoissonOptions& options = {});

// Lap_h u with the same boundary treatment.
CellField discrete_laplacian(const CellField& u);

}  // namespace liouville
