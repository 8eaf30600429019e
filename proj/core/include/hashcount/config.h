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

// Text format for ExperimentConfig.
//
// One `key = value` pair per line; `#` starts a comment; blank lines are
// ignored. Unknown or repeated keys are errors. Lists are comma-separated.
// Keys not given keep their ExperimentConfig defaults. See README.md for
// the full key table.

#ifndef HASHCOUNT_CONFIG_H_
#define HASHCOUNT_CONFIG_H_

#include <string>
#include <string_view>
#include <vector>

#include "hashcount/experiment.h"

namespace hashcount {

// Parses and validates. Throws kConfigInvalid naming the key (and line).
ExperimentConfig ParseConfig(std::string_view text);
ExperimentConfig LoadConfigFile(const std::string& path);

// Every key in canonical order; ParseConfig(SerializeConfig(c)) == c.
std::string SerializeConfig(const ExperimentConfig& config);

// Sets a single key as if it appeared in a config file (no validation).
void SetConfigValue(ExperimentConfig& config, std::string_view key,
                    std::string_view value);

const std::vector<std::string>& ConfigKeys();

}  // namespace hashcount

#endif  // HASHCOUNT_CONFIG_H_
