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

// Experiment harness behind the command-line tool: multi-seed runs, sweeps,
// validation reports and CSV output.
//
// Metrics CSV (schema version 1, LF line endings, reals as %.9g):
//
//   iteration,seed,mean_true_return,mean_bonus,distinct_keys,counter_bytes,ae_loss
//
// ae_loss is empty unless the autoencoder was retrained in that iteration.
// Wall-clock times go to a separate timing CSV so that the metrics file of
// a rerun is byte-identical.

#ifndef HASHCOUNT_HARNESS_H_
#define HASHCOUNT_HARNESS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hashcount/experiment.h"

namespace hashcount {

inline constexpr int kMetricsSchemaVersion = 1;

std::string MetricsHeader();
std::string FormatMetricsCsv(const std::vector<RunResult>& results);
std::string FormatTimingCsv(const std::vector<RunResult>& results);

struct Summary {
  std::size_t seeds = 0;
  double mean = 0.0;  // of per-seed final returns
  double std = 0.0;   // sample standard deviation, 0 for one seed
};

Summary Summarize(const std::vector<RunResult>& results, std::size_t window);

// Runs every seed, up to `jobs` at a time. Results follow `seeds` order.
// The first failure is rethrown after all workers finish.
std::vector<RunResult> RunSeeds(const ExperimentConfig& config,
                                const std::vector<std::uint64_t>& seeds,
                                std::size_t jobs);

struct CommandOptions {
  std::optional<std::string> out_dir;  // overrides config output_dir
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  bool color = false;
};

// Exit codes: 0 success, 1 runtime failure, 2 configuration error.
int CmdRun(const std::string& config_path, const CommandOptions& options,
           std::ostream& out, std::ostream& err);

enum class SweepAxis { kK, kBeta, kBackend, kCountMode };

SweepAxis ParseSweepAxis(std::string_view name);
std::string_view SweepAxisName(SweepAxis axis);

// Base config with one axis value applied. Sweeping k also rescales beta to
// base.beta * reference_k / k.
ExperimentConfig ApplySweepValue(const ExperimentConfig& base, SweepAxis axis,
                                 std::string_view value);

// Seeds of cell `cell_index`: MixSeed(MixSeed(master, cell_index), s) for
// each s in base.seeds.
std::vector<std::uint64_t> CellSeeds(const ExperimentConfig& base,
                                     std::uint64_t master_seed,
                                     std::size_t cell_index);

struct SweepCell {
  std::string value;
  ExperimentConfig config;
  std::vector<RunResult> results;
  std::optional<Summary> summary;  // empty when the cell failed
  std::string error;
};

// Runs every cell; a failing cell records its error and the rest continue.
std::vector<SweepCell> RunSweep(const ExperimentConfig& base, SweepAxis axis,
                                const std::vector<std::string>& values,
                                std::uint64_t master_seed, std::size_t jobs);

int CmdSweep(const std::string& config_path, std::string_view axis,
             const std::vector<std::string>& values,
             const CommandOptions& options, std::ostream& out,
             std::ostream& err);

int CmdValidate(std::string_view suite, const CommandOptions& options,
                std::ostream& out, std::ostream& err);

}  // namespace hashcount

#endif  // HASHCOUNT_HARNESS_H_
