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

// Acceptance run: checks criteria 1-10 and prints one PASS/FAIL line each.
// Exits nonzero if any criterion fails. Configs come from configs/.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "hashcount/autoencoder.h"
#include "hashcount/config.h"
#include "hashcount/counter.h"
#include "hashcount/env.h"
#include "hashcount/experiment.h"
#include "hashcount/harness.h"
#include "hashcount/validate.h"

namespace hashcount {
namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::size_t Jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

ExperimentConfig Load(const std::string& name) {
  return LoadConfigFile(std::string(HASHCOUNT_CONFIG_DIR) + "/" + name + ".cfg");
}

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

Outcome LshAngularLaw() {
  Outcome o{true, ""};
  for (double theta : {0.0, std::numbers::pi / 4, std::numbers::pi / 2}) {
    const double rate = AngularDisagreementRate(theta, 100000, 1000 + o.detail.size());
    const double expected = theta / std::numbers::pi;
    const bool ok = theta == 0.0 ? rate == 0.0 : std::abs(rate - expected) <= 0.01;
    o.passed = o.passed && ok;
    o.detail += Fmt("theta/pi=%.2f rate=%.4f; ", expected, rate);
  }
  return o;
}

Outcome SketchTheory() {
  Outcome o{true, ""};
  double worst = 0.0;
  int cells = 0;
  for (std::size_t l : {1, 2, 4, 6}) {
    const std::vector<std::uint64_t> primes(kSmallPrimes.begin(), kSmallPrimes.begin() + l);
    for (double load : {0.05, 0.1, 0.5}) {
      const auto n = static_cast<std::uint64_t>(std::llround(load * 1000));
      const OvercountCell c = MeasureOvercount(primes, n, 10000, MixSeed(77, cells++));
      const double se = c.standard_error();
      const double z = se > 0 ? std::abs(c.empirical() - c.theory) / se : 0.0;
      worst = std::max(worst, z);
      o.passed = o.passed && c.WithinSigmas(3.0);
    }
  }
  o.detail = Fmt("12 cells, worst deviation %.2f standard errors", worst);
  return o;
}

Outcome NeverUndercount() {
  const std::uint64_t violations = CountUndercounts(1000000, 29);
  return {violations == 0, Fmt("10^6 sequences, %llu violations",
                               static_cast<unsigned long long>(violations))};
}

Outcome GradientCorrectness() {
  const GradcheckReport r = Gradcheck(20, 1e-5, 31);
  return {r.models == 20 && r.max_relative_error < 1e-4,
          Fmt("20 models, %zu parameters, max relative error %.2e", r.parameters,
              r.max_relative_error)};
}

// Fixed toy set: eight 10x10 two-room images with the agent at distinct
// cells, scaled to [0, 1].
std::vector<std::vector<double>> ToySet() {
  const Cell agents[8] = {{0, 0}, {2, 3}, {4, 9}, {7, 1}, {9, 0}, {6, 6}, {1, 8}, {3, 5}};
  std::vector<std::vector<double>> rows;
  for (const Cell& a : agents) {
    std::vector<double> img(100, 0.0);
    for (const Cell& w : TwoRoomWalls(10, 10)) img[w.y * 10 + w.x] = kGridWallValue / 255.0;
    img[a.y * 10 + a.x] = 1.0;
    rows.push_back(std::move(img));
  }
  return rows;
}

Outcome BinarizationPressure() {
  const auto rows = ToySet();
  const TrainBatch batch = TrainBatch::FromRows(rows);
  AutoencoderModel model = AutoencoderModel::Create({100}, 64, 0.3, /*lambda=*/10.0, /*seed=*/1);
  AdamState adam;
  Rng noise(101);
  double loss = 0.0;
  for (int step = 0; step < 2000; ++step) loss = TrainStep(model, batch, adam, 0.01, noise);
  std::size_t near = 0, total = 0;
  std::set<std::vector<std::uint8_t>> codes;
  for (const auto& x : rows) {
    const Eigen::VectorXd b = EncodeCode(model, x);
    for (double v : b) {
      near += std::min(v, 1.0 - v) <= 0.05;
      ++total;
    }
    codes.insert(Binarize(std::vector<double>(b.data(), b.data() + b.size())).bits());
  }
  const double fraction = static_cast<double>(near) / static_cast<double>(total);
  return {fraction >= 0.9, Fmt("%.1f%% of activations within 0.05 of {0,1}, %zu distinct codes, "
                               "final loss %.3f",
                               100.0 * fraction, codes.size(), loss)};
}

Outcome BonusOffEquivalence() {
  Outcome o{true, ""};
  for (const char* name : {"chain_simhash", "gridworld_simhash", "gridworld_learned",
                           "pointmass_grid"}) {
    ExperimentConfig c = Load(name);
    c.beta = 0.0;
    const std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
    const auto with = RunSeeds(c, seeds, Jobs());
    const auto without = RunSeeds(BaselineOf(c), seeds, Jobs());
    bool same = true;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      same = same && with[i].true_returns == without[i].true_returns;
      for (std::size_t t = 0; t < with[i].rows.size(); ++t) {
        same = same && std::memcmp(&with[i].rows[t].mean_true_return,
                                   &without[i].rows[t].mean_true_return, sizeof(double)) == 0;
      }
    }
    o.passed = o.passed && same;
    o.detail += std::string(name) + (same ? " identical; " : " DIFFERS; ");
  }
  return o;
}

// Median iterations-to-first-goal; nullopt (infinite) when half or more
// of the seeds never reach it.
std::optional<double> MedianFirstGoal(const std::vector<RunResult>& results,
                                      std::size_t* reached) {
  std::vector<double> firsts;
  for (const auto& r : results) {
    const auto first = r.FirstGoalIteration();
    firsts.push_back(first ? static_cast<double>(*first) : INFINITY);
  }
  *reached = static_cast<std::size_t>(
      std::count_if(firsts.begin(), firsts.end(), [](double v) { return std::isfinite(v); }));
  std::sort(firsts.begin(), firsts.end());
  const std::size_t n = firsts.size();
  const double median = n % 2 ? firsts[n / 2] : 0.5 * (firsts[n / 2 - 1] + firsts[n / 2]);
  if (!std::isfinite(median)) return std::nullopt;
  return median;
}

std::string MedianText(const std::optional<double>& m) {
  return m ? Fmt("%.1f", *m) : std::string("inf");
}

Outcome ExplorationEfficacy(const char* bonus_name, const char* baseline_name) {
  const ExperimentConfig bonus = Load(bonus_name);
  const ExperimentConfig baseline = Load(baseline_name);
  std::size_t bonus_reached = 0, baseline_reached = 0;
  const auto mb = MedianFirstGoal(RunSeeds(bonus, bonus.seeds, Jobs()), &bonus_reached);
  const auto ma = MedianFirstGoal(RunSeeds(baseline, baseline.seeds, Jobs()), &baseline_reached);
  const std::size_t n = baseline.seeds.size();
  const bool baseline_fails = (n - baseline_reached) * 5 >= n * 4;
  const bool ok = bonus.seeds.size() == 20 && n == 20 && bonus.iterations == baseline.iterations &&
                  mb.has_value() && (!ma.has_value() || *mb < *ma) && baseline_fails;
  return {ok, Fmt("%s: median first goal %s (%zu/20 reached); %s: %s (%zu/20 reached), "
                  "budget %zu iterations",
                  bonus_name, MedianText(mb).c_str(), bonus_reached, baseline_name,
                  MedianText(ma).c_str(), baseline_reached, bonus.iterations)};
}

Outcome GranularityPattern() {
  const ExperimentConfig base = Load("gridworld_ksweep");
  const std::vector<std::string> ks = {"4", "16", "64", "256"};
  const auto cells = RunSweep(base, SweepAxis::kK, ks, 0, Jobs());
  std::string detail;
  std::size_t best = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].summary) return {false, "cell k=" + ks[i] + " failed: " + cells[i].error};
    detail += Fmt("k=%s %.3f+/-%.3f; ", ks[i].c_str(), cells[i].summary->mean,
                  cells[i].summary->std);
    if (cells[i].summary->mean > cells[best].summary->mean) best = i;
  }
  const Summary& b = *cells[best].summary;
  auto separated = [&](const Summary& s) { return s.mean + s.std < b.mean - b.std; };
  const bool interior = best != 0 && best + 1 != cells.size();
  const bool ok = base.seeds.size() == 10 && interior && separated(*cells.front().summary) &&
                  separated(*cells.back().summary);
  return {ok, detail + "best k=" + ks[best]};
}

Outcome StateVsStateAction() {
  const ExperimentConfig base = Load("chain_counting");
  ExperimentConfig baseline = Load("chain_egreedy");
  baseline.iterations = base.iterations;
  baseline.seeds = base.seeds;
  baseline.final_window = base.final_window;
  const auto cells = RunSweep(base, SweepAxis::kCountMode, {"state", "state_action"}, 0, Jobs());
  const auto base_runs = RunSeeds(baseline, baseline.seeds, Jobs());
  const Summary bs = Summarize(base_runs, baseline.final_window);
  std::size_t base_reached = 0;
  MedianFirstGoal(base_runs, &base_reached);
  bool ok = true;
  std::string detail;
  for (const auto& cell : cells) {
    if (!cell.summary) return {false, "cell " + cell.value + " failed: " + cell.error};
    std::size_t reached = 0;
    MedianFirstGoal(cell.results, &reached);
    ok = ok && cell.summary->mean > bs.mean && reached > base_reached;
    detail += Fmt("%s final %.3f (%zu/20 reached); ", cell.value.c_str(), cell.summary->mean,
                  reached);
  }
  return {ok, detail + Fmt("baseline final %.3f (%zu/20 reached)", bs.mean, base_reached)};
}

Outcome LearnedHashPipeline() {
  const ExperimentConfig learned = Load("gridworld_learned");
  ExperimentConfig baseline = Load("gridworld_egreedy");
  baseline.seeds = learned.seeds;
  std::size_t learned_reached = 0, baseline_reached = 0;
  MedianFirstGoal(RunSeeds(learned, learned.seeds, Jobs()), &learned_reached);
  MedianFirstGoal(RunSeeds(baseline, baseline.seeds, Jobs()), &baseline_reached);
  const std::size_t n = learned.seeds.size();
  const bool shape = n == 10 && learned.ae_code_dim == 64 && learned.simhash_k == 16 &&
                     learned.ae_update_every == 3 && learned.iterations == baseline.iterations;
  const bool ok = shape && learned_reached * 2 >= n && baseline_reached * 10 < n;
  return {ok, Fmt("learned %zu/%zu reached, baseline %zu/%zu, budget %zu iterations",
                  learned_reached, n, baseline_reached, n, learned.iterations)};
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> check;
};

int Main() {
  const std::vector<Criterion> criteria = {
      {1, "LSH angular law", 10, LshAngularLaw},
      {2, "sketch theory match", 60, SketchTheory},
      {3, "never-undercount", 30, NeverUndercount},
      {4, "gradient correctness", 10, GradientCorrectness},
      {5, "binarization pressure", 120, BinarizationPressure},
      {6, "bonus-off equivalence", 60, BonusOffEquivalence},
      {7, "exploration efficacy",
       600,
       [] {
         Outcome chain = ExplorationEfficacy("chain_simhash", "chain_egreedy");
         Outcome grid = ExplorationEfficacy("gridworld_simhash", "gridworld_egreedy");
         return Outcome{chain.passed && grid.passed, chain.detail + " | " + grid.detail};
       }},
      {8, "granularity pattern", 900, GranularityPattern},
      {9, "state vs state-action", 300, StateVsStateAction},
      {10, "learned-hash pipeline", 900, LearnedHashPipeline},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.limit_seconds;
    const bool passed = o.passed && in_time;
    failures += !passed;
    std::printf("criterion %2d %s  %-24s %7.1f s (limit %4.0f s)%s  %s\n", c.id,
                passed ? "PASS" : "FAIL", c.title, seconds, c.limit_seconds,
                in_time ? "" : " TOO SLOW", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace hashcount

int main() { return hashcount::Main(); }
