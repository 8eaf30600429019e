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

#include "hashcount/harness.h"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "hashcount/config.h"
#include "hashcount/error.h"
#include "hashcount/seed.h"
#include "hashcount/validate.h"

namespace hashcount {
namespace {

std::string Real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Returns one captured
// exception per task (null on success).
template <typename Fn>
std::vector<std::exception_ptr> ParallelFor(std::size_t n, std::size_t jobs, Fn fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(jobs, n));
  if (threads == 1) {
    worker();
    return errors;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return errors;
}

std::string Describe(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& ex) {
    return ex.what();
  } catch (...) {
    return "unknown error";
  }
}

void WriteFile(const std::filesystem::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path.string() + "'");
  f << body;
  if (!f) throw Error(ErrorCode::kInvalidArgument, "write failed for '" + path.string() + "'");
}

std::string SummaryText(const Summary& s, std::size_t window) {
  return "final return (last " + std::to_string(window) + " iterations): " + Real(s.mean) +
         " +/- " + Real(s.std) + " over " + std::to_string(s.seeds) + " seeds";
}

}  // namespace

std::string MetricsHeader() {
  return "iteration,seed,mean_true_return,mean_bonus,distinct_keys,counter_bytes,ae_loss\n";
}

std::string FormatMetricsCsv(const std::vector<RunResult>& results) {
  std::string out = MetricsHeader();
  for (const auto& r : results) {
    for (const auto& row : r.rows) {
      out += std::to_string(row.iteration) + ',' + std::to_string(row.seed) + ',' +
             Real(row.mean_true_return) + ',' + Real(row.mean_bonus) + ',' +
             std::to_string(row.distinct_keys) + ',' + std::to_string(row.counter_bytes) + ',' +
             (row.ae_loss ? Real(*row.ae_loss) : std::string()) + '\n';
    }
  }
  return out;
}

std::string FormatTimingCsv(const std::vector<RunResult>& results) {
  std::string out = "iteration,seed,wall_ms\n";
  for (const auto& r : results) {
    for (const auto& row : r.rows) {
      out += std::to_string(row.iteration) + ',' + std::to_string(row.seed) + ',' +
             Real(row.wall_ms) + '\n';
    }
  }
  return out;
}

Summary Summarize(const std::vector<RunResult>& results, std::size_t window) {
  Summary s;
  s.seeds = results.size();
  if (results.empty()) return s;
  std::vector<double> finals;
  for (const auto& r : results) finals.push_back(r.FinalReturn(window));
  for (double f : finals) s.mean += f;
  s.mean /= static_cast<double>(finals.size());
  if (finals.size() > 1) {
    double ss = 0.0;
    for (double f : finals) ss += (f - s.mean) * (f - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(finals.size() - 1));
  }
  return s;
}

std::vector<RunResult> RunSeeds(const ExperimentConfig& config,
                                const std::vector<std::uint64_t>& seeds,
                                std::size_t jobs) {
  ValidateConfig(config);
  std::vector<RunResult> results(seeds.size());
  auto errors = ParallelFor(seeds.size(), jobs,
                            [&](std::size_t i) { results[i] = RunExperiment(config, seeds[i]); });
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

int CmdRun(const std::string& config_path, const CommandOptions& options,
           std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = LoadConfigFile(config_path);
    if (options.seed) config.seeds = {*options.seed};
    if (options.out_dir) config.output_dir = *options.out_dir;
    ValidateConfig(config);
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
  try {
    auto results = RunSeeds(config, config.seeds, options.jobs);
    const std::filesystem::path dir(config.output_dir);
    std::filesystem::create_directories(dir);
    WriteFile(dir / (config.name + ".csv"), FormatMetricsCsv(results));
    WriteFile(dir / (config.name + ".timing.csv"), FormatTimingCsv(results));
    const Summary s = Summarize(results, config.final_window);
    WriteFile(dir / (config.name + ".summary.csv"),
              "schema_version,seeds,final_window,final_mean,final_std\n" +
                  std::to_string(kMetricsSchemaVersion) + ',' + std::to_string(s.seeds) + ',' +
                  std::to_string(config.final_window) + ',' + Real(s.mean) + ',' + Real(s.std) +
                  '\n');
    out << config.name << ": " << SummaryText(s, config.final_window) << '\n';
    out << "wrote " << (dir / (config.name + ".csv")).string() << '\n';
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

SweepAxis ParseSweepAxis(std::string_view name) {
  if (name == "k") return SweepAxis::kK;
  if (name == "beta") return SweepAxis::kBeta;
  if (name == "backend") return SweepAxis::kBackend;
  if (name == "count_mode") return SweepAxis::kCountMode;
  throw Error(ErrorCode::kConfigInvalid,
              "axis: unknown sweep axis '" + std::string(name) +
                  "' (k, beta, backend, count_mode)");
}

std::string_view SweepAxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kK:
      return "k";
    case SweepAxis::kBeta:
      return "beta";
    case SweepAxis::kBackend:
      return "backend";
    case SweepAxis::kCountMode:
      return "count_mode";
  }
  return "?";
}

ExperimentConfig ApplySweepValue(const ExperimentConfig& base, SweepAxis axis,
                                 std::string_view value) {
  ExperimentConfig c = base;
  switch (axis) {
    case SweepAxis::kK:
      SetConfigValue(c, "hasher.k", value);
      if (c.simhash_k == 0) throw Error(ErrorCode::kConfigInvalid, "hasher.k: must be >= 1");
      c.beta = base.beta * static_cast<double>(base.reference_k) /
               static_cast<double>(c.simhash_k);
      break;
    case SweepAxis::kBeta:
      SetConfigValue(c, "beta", value);
      break;
    case SweepAxis::kBackend:
      SetConfigValue(c, "counter", value);
      break;
    case SweepAxis::kCountMode:
      SetConfigValue(c, "count_mode", value);
      break;
  }
  c.name = base.name + "_" + std::string(SweepAxisName(axis)) + "=" + std::string(value);
  ValidateConfig(c);
  return c;
}

std::vector<std::uint64_t> CellSeeds(const ExperimentConfig& base,
                                     std::uint64_t master_seed,
                                     std::size_t cell_index) {
  const std::uint64_t cell_seed = MixSeed(master_seed, cell_index);
  std::vector<std::uint64_t> out;
  for (std::uint64_t s : base.seeds) out.push_back(MixSeed(cell_seed, s));
  return out;
}

std::vector<SweepCell> RunSweep(const ExperimentConfig& base, SweepAxis axis,
                                const std::vector<std::string>& values,
                                std::uint64_t master_seed, std::size_t jobs) {
  std::vector<SweepCell> cells(values.size());
  struct Task {
    std::size_t cell;
    std::size_t seed_index;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < values.size(); ++i) {
    cells[i].value = values[i];
    try {
      cells[i].config = ApplySweepValue(base, axis, values[i]);
    } catch (const std::exception& e) {
      cells[i].error = e.what();
      continue;
    }
    const auto seeds = CellSeeds(base, master_seed, i);
    cells[i].results.resize(seeds.size());
    for (std::size_t j = 0; j < seeds.size(); ++j) tasks.push_back({i, j, seeds[j]});
  }
  auto errors = ParallelFor(tasks.size(), jobs, [&](std::size_t t) {
    const Task& task = tasks[t];
    cells[task.cell].results[task.seed_index] =
        RunExperiment(cells[task.cell].config, task.seed);
  });
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (errors[t] && cells[tasks[t].cell].error.empty()) {
      cells[tasks[t].cell].error = Describe(errors[t]);
    }
  }
  for (auto& cell : cells) {
    if (cell.error.empty()) {
      cell.summary = Summarize(cell.results, cell.config.final_window);
    } else {
      cell.results.clear();
    }
  }
  return cells;
}

int CmdSweep(const std::string& config_path, std::string_view axis_name,
             const std::vector<std::string>& values,
             const CommandOptions& options, std::ostream& out,
             std::ostream& err) {
  ExperimentConfig base;
  SweepAxis axis;
  try {
    base = LoadConfigFile(config_path);
    if (options.out_dir) base.output_dir = *options.out_dir;
    axis = ParseSweepAxis(axis_name);
    if (values.empty()) throw Error(ErrorCode::kConfigInvalid, "values: need at least one");
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  }
  try {
    const auto cells = RunSweep(base, axis, values, options.seed.value_or(0), options.jobs);
    const std::filesystem::path dir(base.output_dir);
    std::filesystem::create_directories(dir);

    std::string table = std::string(SweepAxisName(axis)) + ",beta,seeds,final_mean,final_std,status\n";
    bool any_failed = false;
    out << "sweep over " << SweepAxisName(axis) << " (final return, last "
        << base.final_window << " iterations)\n";
    for (const auto& cell : cells) {
      if (cell.summary) {
        WriteFile(dir / (cell.config.name + ".csv"), FormatMetricsCsv(cell.results));
        WriteFile(dir / (cell.config.name + ".timing.csv"), FormatTimingCsv(cell.results));
        table += cell.value + ',' + Real(cell.config.beta) + ',' +
                 std::to_string(cell.summary->seeds) + ',' + Real(cell.summary->mean) + ',' +
                 Real(cell.summary->std) + ",ok\n";
        out << "  " << cell.value << ": " << Real(cell.summary->mean) << " +/- "
            << Real(cell.summary->std) << '\n';
      } else {
        any_failed = true;
        table += cell.value + ",,,,,failed\n";
        out << "  " << cell.value << ": FAILED\n";
        err << "cell " << cell.value << " failed: " << cell.error << '\n';
      }
    }
    const auto table_path =
        dir / (base.name + "_sweep_" + std::string(SweepAxisName(axis)) + ".csv");
    WriteFile(table_path, table);
    out << "wrote " << table_path.string() << '\n';
    return any_failed ? 1 : 0;
  } catch (const std::exception& e) {
    err << "sweep failed: " << e.what() << '\n';
    return 1;
  }
}

int CmdValidate(std::string_view suite, const CommandOptions& options,
                std::ostream& out, std::ostream& err) {
  std::vector<CheckResult> results;
  try {
    results = RunValidationSuite(suite);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 2;
  }
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.suite.size() + r.name.size() + 1);
  bool all_passed = true;
  for (const auto& r : results) {
    all_passed = all_passed && r.passed;
    std::string label = r.suite + ":" + r.name;
    label.resize(width, ' ');
    const char* verdict = r.passed ? "PASS" : "FAIL";
    if (options.color) {
      out << label << "  " << (r.passed ? "\x1b[32m" : "\x1b[31m") << verdict << "\x1b[0m";
    } else {
      out << label << "  " << verdict;
    }
    out << "  " << r.detail << '\n';
  }
  return all_passed ? 0 : 1;
}

}  // namespace hashcount
