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

#include "hashcount/bonus.h"

#include <cmath>
#include <string>

#include "hashcount/error.h"

namespace hashcount {

double Bonus(std::uint64_t count, const BonusConfig& config) {
  if (!(config.beta >= 0.0) || !std::isfinite(config.beta)) {
    throw Error(ErrorCode::kInvalidArgument,
                "beta must be finite and >= 0, got " + std::to_string(config.beta));
  }
  if (count == 0) {
    throw Error(ErrorCode::kZeroCount,
                "bonus requested for an uncounted key; counts must be updated first");
  }
  return config.beta / std::sqrt(static_cast<double>(count));
}

CountKey MakeKey(const StateCode& code, std::optional<ActionId> action,
                 const BonusConfig& config) {
  if (config.count_mode == CountMode::kState) return EncodeKey(code);
  if (!action) {
    throw Error(ErrorCode::kMissingAction, "state-action counting needs an action id");
  }
  return EncodeKey(code, action);
}

}  // namespace hashcount
