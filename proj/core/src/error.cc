// Copyright 2026 The hashcount Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hashcount/error.h"

namespace hashcount {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDimension: return "invalid-dimension";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kNonFiniteInput: return "non-finite-input";
    case ErrorCode::kShapeNotDivisible: return "shape-not-divisible";
    case ErrorCode::kIntensityOutOfRange: return "intensity-out-of-range";
    case ErrorCode::kNonPositiveGridSize: return "non-positive-grid-size";
    case ErrorCode::kCountOverflow: return "count-overflow";
    case ErrorCode::kZeroCount: return "zero-count";
    case ErrorCode::kMissingAction: return "missing-action";
    case ErrorCode::kNoiseTooSmall: return "noise-too-small";
    case ErrorCode::kEmptyBatch: return "empty-batch";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidSize: return "invalid-size";
    case ErrorCode::kUnreachableGoal: return "unreachable-goal";
    case ErrorCode::kInvalidRadius: return "invalid-radius";
    case ErrorCode::kStepAfterDone: return "step-after-done";
    case ErrorCode::kStepBeforeReset: return "step-before-reset";
    case ErrorCode::kInvalidAction: return "invalid-action";
    case ErrorCode::kConfigInvalid: return "config-invalid";
    case ErrorCode::kFormat: return "format-error";
    case ErrorCode::kPhaseViolation: return "phase-violation";
  }
  return "unknown-error";
}

}  // namespace hashcount
