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

#ifndef HASHCOUNT_ERROR_H_
#define HASHCOUNT_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hashcount {

enum class ErrorCode {
  kInvalidDimension,
  kDimensionMismatch,
  kNonFiniteInput,
  kShapeNotDivisible,
  kIntensityOutOfRange,
  kNonPositiveGridSize,
  kCountOverflow,
  kZeroCount,
  kMissingAction,
  kNoiseTooSmall,
  kEmptyBatch,
  kInvalidArgument,
  kInvalidSize,
  kUnreachableGoal,
  kInvalidRadius,
  kStepAfterDone,
  kStepBeforeReset,
  kInvalidAction,
  kConfigInvalid,
  kFormat,
  kPhaseViolation,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type; `code()`
// identifies the failure class and `what()` carries a readable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hashcount

#endif  // HASHCOUNT_ERROR_H_
