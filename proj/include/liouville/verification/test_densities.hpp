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

// Truncated Gaussian bump on a positive floor,
//   rho(x) ~ floor + exp(-|x - center|^2 / (2 sigma^2)),
// cut to the grid's domain and normalized to unit mass.
GridDensity gaussian_bump(const CellGrid& grid, const Vec2& center, double sigma, double floor);

// Same profile in x only (constant along y).
GridDensity gaussian_profile_x(const CellGrid& grid, double center, double sigma, double floor);

// rho (1 + amplitude cos(pi (x - x0) / width)) / Z on the base density's grid.
GridDensity cosine_perturbation(const GridDensity& base, double amplitude);

// The pairs used throughout the test suites and by `liouville gen`.
struct DensityPair {
  GridDensity mu;
  GridDensity nu;
};

struct BumpPairSpec {
  int n = 64;
  Vec2 mu_center = Vec2(0.42, 0.45);
  Vec2 nu_center = Vec2(0.58, 0.55);
  double sigma = 0.18;
  double floor = 0.4;
};

struct CosinePairSpec {
  int n = 64;
  Vec2 center = Vec2(0.5, 0.5);
  double sigma = 0.2;
  double floor = 0.4;
  double amplitude = 0.1;
};

struct TranslationPairSpec {
  int n = 64;
  double mu_center = 0.45;
  double shift = 0.1;
  double sigma = 0.1;
  double floor = 0.005;
};

// Unit square domain for all three.
DensityPair bump_pair(const BumpPairSpec& spec = {});
DensityPair cosine_pair(const CosinePairSpec& spec = {});
DensityPair translation_pair(const TranslationPairSpec& spec = {});

}  // namespace liouville
