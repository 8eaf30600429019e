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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "hashcount/config.h"
#include "test_util.h"

namespace hashcount {
namespace {

namespace fs = std::filesystem;

class HarnessTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hashcount_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string WriteConfig(const std::string& name, const std::string& body) {
    const fs::path path = dir_ / (name + ".cfg");
    std::ofstream(path) << "name = " << name << "\noutput_dir = " << (dir_ / "out").string()
                        << "\n" << body;
    return path.string();
  }

  static std::string Read(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

constexpr char kChain[] =
    "env.n_states = 10\nagent.batch_size = 100\niterations = 4\nseeds = 0, 1\n"
    "final_window = 2\n";

TEST_F(HarnessTest, RunWritesCsvForEverySeed) {
  std::ostringstream out, err;
  ASSERT_EQ(CmdRun(WriteConfig("chain", kChain), {}, out, err), 0) << err.str();
  const std::string csv = Read(dir_ / "out" / "chain.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line + "\n", MetricsHeader());
  int rows[2] = {0, 0};
  while (std::getline(lines, line)) {
    const auto first = line.find(',');
    const int seed = std::stoi(line.substr(first + 1));
    ASSERT_TRUE(seed == 0 || seed == 1) << line;
    ++rows[seed];
  }
  EXPECT_EQ(rows[0], 4);
  EXPECT_EQ(rows[1], 4);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_NE(out.str().find("over 2 seeds"), std::string::npos) << out.str();
  EXPECT_TRUE(fs::exists(dir_ / "out" / "chain.timing.csv"));
  EXPECT_EQ(Read(dir_ / "out" / "chain.summary.csv").rfind("schema_version,", 0), 0u);
}

TEST_F(HarnessTest, RerunIsByteIdentical) {
  const std::string cfg = WriteConfig("chain", kChain);
  std::ostringstream out, err;
  ASSERT_EQ(CmdRun(cfg, {}, out, err), 0);
  const std::string first = Read(dir_ / "out" / "chain.csv");
  CommandOptions parallel;
  parallel.jobs = 2;
  ASSERT_EQ(CmdRun(cfg, parallel, out, err), 0);
  EXPECT_EQ(Read(dir_ / "out" / "chain.csv"), first);
}

TEST_F(HarnessTest, ConfigErrorExitsTwoNamingKey) {
  std::ostringstream out, err;
  EXPECT_EQ(CmdRun(WriteConfig("bad", "beta = -0.01\n"), {}, out, err), 2);
  EXPECT_NE(err.str().find("beta"), std::string::npos) << err.str();
  std::ostringstream err2;
  EXPECT_EQ(CmdRun((dir_ / "missing.cfg").string(), {}, out, err2), 2);
}

TEST_F(HarnessTest, SeedAndOutDirOverrides) {
  CommandOptions options;
  options.seed = 7;
  options.out_dir = (dir_ / "elsewhere").string();
  std::ostringstream out, err;
  ASSERT_EQ(CmdRun(WriteConfig("chain", kChain), options, out, err), 0);
  const std::string csv = Read(dir_ / "elsewhere" / "chain.csv");
  EXPECT_NE(csv.find("\n0,7,"), std::string::npos);
  EXPECT_EQ(csv.find("\n0,0,"), std::string::npos);
}

TEST_F(HarnessTest, MetricsFormat) {
  RunResult r;
  r.seed = 3;
  MetricsRow row;
  row.iteration = 0;
  row.seed = 3;
  row.mean_true_return = 0.1;
  row.mean_bonus = 1.0 / 3.0;
  row.distinct_keys = 12;
  row.counter_bytes = 4096;
  r.rows.push_back(row);
  row.iteration = 1;
  row.ae_loss = 2.5;
  r.rows.push_back(row);
  EXPECT_EQ(FormatMetricsCsv({r}),
            MetricsHeader() +
                "0,3,0.1,0.333333333,12,4096,\n"
                "1,3,0.1,0.333333333,12,4096,2.5\n");
}

TEST_F(HarnessTest, SummaryUsesSampleStd) {
  std::vector<RunResult> results(3);
  const double finals[] = {1.0, 2.0, 4.0};
  for (int i = 0; i < 3; ++i) {
    results[i].rows.resize(2);
    results[i].rows[1].mean_true_return = finals[i];
    results[i].rows[0].mean_true_return = finals[i];
  }
  const Summary s = Summarize(results, 1);
  EXPECT_EQ(s.seeds, 3u);
  EXPECT_DOUBLE_EQ(s.mean, 7.0 / 3.0);
  EXPECT_NEAR(s.std, std::sqrt(((4.0 / 3) * (4.0 / 3) + (1.0 / 3) * (1.0 / 3) +
                                (5.0 / 3) * (5.0 / 3)) / 2.0),
              1e-12);
}

TEST_F(HarnessTest, SweepKRescalesBetaAndNamesCells) {
  const ExperimentConfig base = ParseConfig(std::string(kChain) + "beta = 0.01\nsweep.reference_k = 16\n");
  const ExperimentConfig c = ApplySweepValue(base, SweepAxis::kK, "64");
  EXPECT_EQ(c.simhash_k, 64u);
  EXPECT_DOUBLE_EQ(c.beta, 0.0025);
  EXPECT_EQ(c.name, base.name + "_k=64");
  EXPECT_EQ(ApplySweepValue(base, SweepAxis::kCountMode, "state_action").count_mode,
            CountMode::kStateAction);
  EXPECT_EQ(CodeOf([&] { ParseSweepAxis("gamma"); }), ErrorCode::kConfigInvalid);
}

TEST_F(HarnessTest, SweepProducesOneCellPerValue) {
  const std::string cfg = WriteConfig("grid", "env = gridworld\nenv.width = 6\nenv.height = 6\n"
                                              "env.horizon = 20\nagent.batch_size = 100\n"
                                              "iterations = 3\nseeds = 0, 1\n");
  std::ostringstream out, err;
  ASSERT_EQ(CmdSweep(cfg, "k", {"8", "32", "128"}, {}, out, err), 0) << err.str();
  const std::string table = Read(dir_ / "out" / "grid_sweep_k.csv");
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 4);
  for (const char* v : {"8", "32", "128"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / ("grid_k=" + std::string(v) + ".csv"))) << v;
  }
}

TEST_F(HarnessTest, FailedCellDoesNotStopOthers) {
  const ExperimentConfig base = ParseConfig(kChain);
  const auto cells = RunSweep(base, SweepAxis::kBackend, {"exact", "bogus", "cms"}, 0, 1);
  ASSERT_EQ(cells.size(), 3u);
  EXPECT_TRUE(cells[0].summary.has_value());
  EXPECT_FALSE(cells[1].summary.has_value());
  EXPECT_FALSE(cells[1].error.empty());
  EXPECT_TRUE(cells[2].summary.has_value());

  const std::string cfg = WriteConfig("chain", kChain);
  std::ostringstream out, err;
  EXPECT_EQ(CmdSweep(cfg, "backend", {"exact", "bogus"}, {}, out, err), 1);
  EXPECT_NE(Read(dir_ / "out" / "chain_sweep_backend.csv").find("bogus,,,,,failed"),
            std::string::npos);
}

TEST_F(HarnessTest, BetaZeroCellEqualsBaseline) {
  const ExperimentConfig base = ParseConfig(kChain);
  const auto cells = RunSweep(base, SweepAxis::kBeta, {"0", "0.01"}, 5, 1);
  ASSERT_TRUE(cells[0].summary.has_value());
  const auto seeds = CellSeeds(base, 5, 0);
  const auto baseline = RunSeeds(BaselineOf(cells[0].config), seeds, 1);
  ASSERT_EQ(baseline.size(), cells[0].results.size());
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    EXPECT_EQ(cells[0].results[i].true_returns, baseline[i].true_returns);
  }
}

TEST_F(HarnessTest, AddingACellKeepsOtherCells) {
  const ExperimentConfig base = ParseConfig(kChain);
  const auto two = RunSweep(base, SweepAxis::kBeta, {"0.01", "0.1"}, 3, 1);
  const auto three = RunSweep(base, SweepAxis::kBeta, {"0.01", "0.1", "1"}, 3, 2);
  for (std::size_t c = 0; c < 2; ++c) {
    ASSERT_EQ(two[c].results.size(), three[c].results.size());
    for (std::size_t i = 0; i < two[c].results.size(); ++i) {
      EXPECT_EQ(two[c].results[i].true_returns, three[c].results[i].true_returns);
    }
  }
  EXPECT_NE(CellSeeds(base, 3, 0), CellSeeds(base, 3, 1));
}

TEST_F(HarnessTest, ValidateExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(CmdValidate("lsh", {}, out, err), 0);
  EXPECT_NE(out.str().find("PASS"), std::string::npos);
  EXPECT_EQ(out.str().find("\x1b["), std::string::npos);  // no color requested
  std::ostringstream out2, err2;
  EXPECT_EQ(CmdValidate("nonsense", {}, out2, err2), 2);
}

}  // namespace
}  // namespace hashcount
