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

#include <Eigen/Core>
#include <Eigen/LU>

namespace liouville {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Upper bound on the number of fields in a VectorFieldFamily. Control values
// are carried in fixed-size arrays of this length on the hot path.
inline constexpr int kMaxFields = 4;

}  // namespace liouville
