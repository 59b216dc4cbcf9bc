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

#include <stdexcept>
#include <string>
#include <string_view>

namespace liouville {

enum class ErrorCode {
  kInvalidArgument,
  kNegativeDensity,
  kZeroMass,
  kNonFinite,
  kSingularFrame,
  kBlowUp,
  kOrientationLoss,
  kExcessiveMassDrift,
  kGridMismatch,
  kSizeExceeded,
  kWeightMismatch,
  kNonConvergence,
  kNonPositive1D,
  kEmptyRow,
  kIncompatibleSource,
  kNonMonotoneMap,
  kFoldOver,
  kNewtonDivergence,
  kNotNearIdentity,
  kNonMonotoneShear,
  kParse,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library surfaces as this exception. `stage` is filled
// in by pipelines that want to attribute a failure to one of their steps.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::string stage);

  ErrorCode code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }
  const std::string& detail() const noexcept { return detail_; }

  Error with_stage(std::string stage) const;

 private:
  ErrorCode code_;
  std::string detail_;
  std::string stage_;
};

}  // namespace liouville
