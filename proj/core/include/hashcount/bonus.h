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

#ifndef HASHCOUNT_BONUS_H_
#define HASHCOUNT_BONUS_H_

#include <cstdint>
#include <optional>

#include "hashcount/count_key.h"
#include "hashcount/hashing.h"

namespace hashcount {

enum class CountMode { kState, kStateAction };

struct BonusConfig {
  double beta = 0.01;
  CountMode count_mode = CountMode::kState;
};

// beta / sqrt(n). A zero count means the caller queried before counting,
// which is reported as kZeroCount.
double Bonus(std::uint64_t count, const BonusConfig& config);

// Counting key for a code; the action takes part only in state-action mode.
CountKey MakeKey(const StateCode& code, std::optional<ActionId> action,
                 const BonusConfig& config);

}  // namespace hashcount

#endif  // HASHCOUNT_BONUS_H_
