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

#include "liouville/core/error.hpp"


namespace liouville {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNegativeDensity: return "NegativeDensity";
    case ErrorCode::kZeroMass: return "ZeroMass";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kSingularFrame: return "SingularFrame";
    case ErrorCode::kBlowUp: return "BlowUp";
    case ErrorCode::kOrientationLoss: return "OrientationLoss";
    case ErrorCode::kExcessiveMassDrift: return "ExcessiveMassDrift";
    case ErrorCode::kGridMismatch: return "GridMismatch";
    case ErrorCode::kSizeExceeded: return "SizeExceeded";
    case ErrorCode::kWeightMismatch: return "WeightMismatch";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kNonPositive1D: return "NonPositive1D";
    case ErrorCode::kEmptyRow: return "EmptyRow";
    case ErrorCode::kIncompatibleSource: return "IncompatibleSource";
    case ErrorCode::kNonMonotoneMap: return "NonMonotoneMap";
    case ErrorCode::kFoldOver: return "FoldOver";
    case ErrorCode::kNewtonDivergence: return "NewtonDivergence";
    case ErrorCode::kNotNearIdentity: return "NotNearIdentity";
    case ErrorCode::kNonMonotoneShear: return "NonMonotoneShear";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {
std::string compose_message(ErrorCode code, const std::string& message, const std::string& stage) {
  std::string out(to_string(code));
  if (!stage.empty()) out += " [" + stage + "]";
  out += ": " + message;
  return out;
}
}  // namespace

Error::Error(ErrorCode code, const std::string& message)
    : Error(code, message, std::string()) {}

Error::Error(ErrorCode code, const std::string& message, std::string stage)
    : std::runtime_error(compose_message(code, message, stage)),
      code_(code),
      detail_(message),
      stage_(std::move(stage)) {}

Error Error::with_stage(std::string stage) const { return Error(code_, detail_, std::move(stage)); }

}  // namespace liouville
