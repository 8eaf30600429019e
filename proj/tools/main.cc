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

// hashcount: run experiments, sweeps and validation suites.
//
//   hashcount run <config> [--seed S] [--out-dir DIR] [--jobs N]
//   hashcount sweep <config> --axis k|beta|backend|count_mode --values a,b,c
//   hashcount validate lsh|sketch|gradcheck|all

#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hashcount/harness.h"

int main(int argc, char** argv) {
  CLI::App app{"Count-based exploration through hashing"};
  app.require_subcommand(1);

  hashcount::CommandOptions options;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::size_t jobs = 1;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Run seed (run) or master seed (sweep)");
    cmd->add_option("--out-dir", out_dir, "Directory for CSV output");
    cmd->add_option("--jobs", jobs, "Parallel experiment instances")
        ->check(CLI::PositiveNumber);
  };

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run all seeds of a config");
  run->add_option("config", config_path, "Config file")->required();
  add_common(run);

  std::string axis;
  std::vector<std::string> values;
  auto* sweep = app.add_subcommand("sweep", "Sweep one config axis");
  sweep->add_option("config", config_path, "Base config file")->required();
  sweep->add_option("--axis", axis, "k, beta, backend or count_mode")->required();
  sweep->add_option("--values", values, "Comma-separated axis values")
      ->required()
      ->delimiter(',');
  add_common(sweep);

  std::string suite = "all";
  auto* validate = app.add_subcommand("validate", "Run statistical property suites");
  validate->add_option("suite", suite, "lsh, sketch, gradcheck or all");
  add_common(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  options.seed = seed;
  options.out_dir = out_dir;
  options.jobs = jobs;
  options.color = std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO) != 0;

  if (*run) return hashcount::CmdRun(config_path, options, std::cout, std::cerr);
  if (*sweep) {
    return hashcount::CmdSweep(config_path, axis, values, options, std::cout, std::cerr);
  }
  return hashcount::CmdValidate(suite, options, std::cout, std::cerr);
}
