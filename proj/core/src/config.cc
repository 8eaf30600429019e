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

#include "hashcount/config.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "hashcount/counter.h"
#include "hashcount/error.h"

namespace hashcount {
namespace {

[[noreturn]] void Bad(std::string_view key, const std::string& reason) {
  throw Error(ErrorCode::kConfigInvalid, std::string(key) + ": " + reason);
}

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> SplitList(std::string_view s) {
  std::vector<std::string_view> out;
  if (Trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(Trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view v) {
  T out{};
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty()) {
    Bad(key, "cannot parse '" + std::string(v) + "' as a number");
  }
  return out;
}

double ParseDouble(std::string_view key, std::string_view v) {
  return ParseNumber<double>(key, v);
}

std::size_t ParseSize(std::string_view key, std::string_view v) {
  if (!v.empty() && v.front() == '-') Bad(key, "must not be negative");
  return ParseNumber<std::size_t>(key, v);
}

std::uint64_t ParseU64(std::string_view key, std::string_view v) {
  if (!v.empty() && v.front() == '-') Bad(key, "must not be negative");
  return ParseNumber<std::uint64_t>(key, v);
}

bool ParseBool(std::string_view key, std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  Bad(key, "expected true or false, got '" + std::string(v) + "'");
}

template <typename E, std::size_t N>
E ParseEnum(std::string_view key, std::string_view v,
            const std::pair<std::string_view, E> (&names)[N]) {
  std::string options;
  for (const auto& [name, value] : names) {
    if (v == name) return value;
    options += options.empty() ? "" : ", ";
    options += name;
  }
  Bad(key, "unknown value '" + std::string(v) + "' (expected " + options + ")");
}

template <typename E, std::size_t N>
std::string EnumName(E v, const std::pair<std::string_view, E> (&names)[N]) {
  for (const auto& [name, value] : names) {
    if (v == value) return std::string(name);
  }
  return "?";
}

std::string Real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Prefer the shortest text that reads back to the same value.
  for (int digits = 1; digits < 17; ++digits) {
    char shorter[32];
    std::snprintf(shorter, sizeof(shorter), "%.*g", digits, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

template <typename T>
std::string JoinList(const std::vector<T>& values, std::string (*fmt)(T)) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += fmt(values[i]);
  }
  return out;
}

std::string U64(std::uint64_t v) { return std::to_string(v); }

constexpr std::pair<std::string_view, EnvKind> kEnvNames[] = {
    {"chain", EnvKind::kChain}, {"gridworld", EnvKind::kGridworld},
    {"pointmass", EnvKind::kPointMass}};
constexpr std::pair<std::string_view, GridObservation> kObsNames[] = {
    {"image", GridObservation::kImage}, {"position", GridObservation::kPosition}};
constexpr std::pair<std::string_view, HasherKind> kHasherNames[] = {
    {"none", HasherKind::kNone},  {"simhash", HasherKind::kSimHash},
    {"bass", HasherKind::kBass},  {"grid", HasherKind::kGrid},
    {"learned", HasherKind::kLearned}};
constexpr std::pair<std::string_view, CounterBackend> kCounterNames[] = {
    {"exact", CounterBackend::kExact}, {"cms", CounterBackend::kCountMin}};
constexpr std::pair<std::string_view, CountMode> kModeNames[] = {
    {"state", CountMode::kState}, {"state_action", CountMode::kStateAction}};
constexpr std::pair<std::string_view, AgentKind> kAgentNames[] = {
    {"qlearning", AgentKind::kQLearning}, {"reinforce", AgentKind::kReinforce}};
constexpr std::pair<std::string_view, PolicyKind> kPolicyNames[] = {
    {"tabular", PolicyKind::kTabular}, {"linear", PolicyKind::kLinear}};
constexpr std::pair<std::string_view, QStateKind> kQStateNames[] = {
    {"observation", QStateKind::kObservation}, {"hash", QStateKind::kHash}};

std::vector<std::uint64_t> ParsePrimes(std::string_view key, std::string_view v) {
  if (v == "6m") return {kSixMillionPrimes.begin(), kSixMillionPrimes.end()};
  if (v == "small") return {kSmallPrimes.begin(), kSmallPrimes.end()};
  std::vector<std::uint64_t> out;
  for (auto item : SplitList(v)) out.push_back(ParseU64(key, item));
  return out;
}

std::string PrimesText(const std::vector<std::uint64_t>& primes) {
  if (std::equal(primes.begin(), primes.end(), kSixMillionPrimes.begin(),
                 kSixMillionPrimes.end())) {
    return "6m";
  }
  if (std::equal(primes.begin(), primes.end(), kSmallPrimes.begin(), kSmallPrimes.end())) {
    return "small";
  }
  return JoinList(primes, &U64);
}

struct Field {
  std::string key;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define HC_SIZE(KEY, MEMBER)                                                         \
  Field {                                                                            \
    KEY, [](ExperimentConfig& c, std::string_view v) { c.MEMBER = ParseSize(KEY, v); }, \
        [](const ExperimentConfig& c) { return std::to_string(c.MEMBER); }           \
  }
#define HC_REAL(KEY, MEMBER)                                                           \
  Field {                                                                              \
    KEY, [](ExperimentConfig& c, std::string_view v) { c.MEMBER = ParseDouble(KEY, v); }, \
        [](const ExperimentConfig& c) { return Real(c.MEMBER); }                       \
  }
#define HC_ENUM(KEY, MEMBER, NAMES)                                                    \
  Field {                                                                              \
    KEY,                                                                               \
        [](ExperimentConfig& c, std::string_view v) { c.MEMBER = ParseEnum(KEY, v, NAMES); }, \
        [](const ExperimentConfig& c) { return EnumName(c.MEMBER, NAMES); }            \
  }

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      {"name", [](ExperimentConfig& c, std::string_view v) { c.name = std::string(v); },
       [](const ExperimentConfig& c) { return c.name; }},
      HC_ENUM("env", env, kEnvNames),
      HC_SIZE("env.n_states", chain_states),
      {"env.width",
       [](ExperimentConfig& c, std::string_view v) { c.grid_width = ParseNumber<int>("env.width", v); },
       [](const ExperimentConfig& c) { return std::to_string(c.grid_width); }},
      {"env.height",
       [](ExperimentConfig& c, std::string_view v) { c.grid_height = ParseNumber<int>("env.height", v); },
       [](const ExperimentConfig& c) { return std::to_string(c.grid_height); }},
      HC_SIZE("env.horizon", grid_horizon),
      HC_ENUM("env.observation", grid_observation, kObsNames),
      HC_REAL("env.goal_radius", goal_radius),
      {"env.seed",
       [](ExperimentConfig& c, std::string_view v) { c.env_seed = ParseU64("env.seed", v); },
       [](const ExperimentConfig& c) { return std::to_string(c.env_seed); }},
      HC_ENUM("hasher", hasher, kHasherNames),
      HC_SIZE("hasher.k", simhash_k),
      {"hasher.bass_cell",
       [](ExperimentConfig& c, std::string_view v) { c.bass_cell = ParseNumber<int>("hasher.bass_cell", v); },
       [](const ExperimentConfig& c) { return std::to_string(c.bass_cell); }},
      {"hasher.bass_bins",
       [](ExperimentConfig& c, std::string_view v) { c.bass_bins = ParseNumber<int>("hasher.bass_bins", v); },
       [](const ExperimentConfig& c) { return std::to_string(c.bass_bins); }},
      {"hasher.bass_simhash",
       [](ExperimentConfig& c, std::string_view v) { c.bass_simhash = ParseBool("hasher.bass_simhash", v); },
       [](const ExperimentConfig& c) { return std::string(c.bass_simhash ? "true" : "false"); }},
      {"hasher.grid_sizes",
       [](ExperimentConfig& c, std::string_view v) {
         c.grid_sizes.clear();
         for (auto item : SplitList(v)) c.grid_sizes.push_back(ParseDouble("hasher.grid_sizes", item));
       },
       [](const ExperimentConfig& c) { return JoinList(c.grid_sizes, &Real); }},
      HC_SIZE("ae.hidden", ae_hidden),
      HC_SIZE("ae.code_dim", ae_code_dim),
      HC_REAL("ae.noise", ae_noise),
      HC_REAL("ae.lambda", ae_lambda),
      HC_SIZE("ae.update_every", ae_update_every),
      HC_SIZE("ae.steps", ae_steps),
      HC_SIZE("ae.minibatch", ae_minibatch),
      HC_REAL("ae.learning_rate", ae_learning_rate),
      HC_SIZE("ae.replay_capacity", ae_replay_capacity),
      HC_ENUM("counter", counter, kCounterNames),
      {"counter.primes",
       [](ExperimentConfig& c, std::string_view v) { c.primes = ParsePrimes("counter.primes", v); },
       [](const ExperimentConfig& c) { return PrimesText(c.primes); }},
      {"bonus", [](ExperimentConfig& c, std::string_view v) { c.bonus = ParseBool("bonus", v); },
       [](const ExperimentConfig& c) { return std::string(c.bonus ? "true" : "false"); }},
      HC_REAL("beta", beta),
      HC_ENUM("count_mode", count_mode, kModeNames),
      HC_ENUM("agent", agent, kAgentNames),
      HC_ENUM("agent.policy", policy, kPolicyNames),
      HC_REAL("agent.learning_rate", learning_rate),
      HC_REAL("agent.alpha", alpha),
      HC_REAL("agent.gamma", gamma),
      HC_REAL("agent.epsilon", epsilon),
      HC_ENUM("agent.q_state", q_state, kQStateNames),
      HC_SIZE("agent.batch_size", batch_size),
      HC_SIZE("iterations", iterations),
      {"seeds",
       [](ExperimentConfig& c, std::string_view v) {
         c.seeds.clear();
         for (auto item : SplitList(v)) c.seeds.push_back(ParseU64("seeds", item));
       },
       [](const ExperimentConfig& c) { return JoinList(c.seeds, &U64); }},
      HC_SIZE("final_window", final_window),
      HC_SIZE("sweep.reference_k", reference_k),
      {"output_dir",
       [](ExperimentConfig& c, std::string_view v) { c.output_dir = std::string(v); },
       [](const ExperimentConfig& c) { return c.output_dir; }},
  };
  return fields;
}

#undef HC_SIZE
#undef HC_REAL
#undef HC_ENUM

}  // namespace

const std::vector<std::string>& ConfigKeys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& f : Fields()) out.push_back(f.key);
    return out;
  }();
  return keys;
}

void SetConfigValue(ExperimentConfig& config, std::string_view key,
                    std::string_view value) {
  for (const auto& f : Fields()) {
    if (f.key == key) {
      f.set(config, value);
      return;
    }
  }
  Bad(key, "unknown key");
}

ExperimentConfig ParseConfig(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = " (line " + std::to_string(line_no) + ")";
    if (eq == std::string_view::npos) {
      Bad(line, "expected 'key = value'" + where);
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (seen.contains(key)) Bad(key, "repeated key" + where);
    seen.emplace(key);
    try {
      SetConfigValue(config, key, value);
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigInvalid,
                  std::string(e.what()).substr(ErrorCodeName(e.code()).size() + 2) + where);
    }
  }
  ValidateConfig(config);
  return config;
}

ExperimentConfig LoadConfigFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfigInvalid, "config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

std::string SerializeConfig(const ExperimentConfig& config) {
  std::string out;
  for (const auto& f : Fields()) {
    out += f.key;
    out += " = ";
    out += f.get(config);
    out += '\n';
  }
  return out;
}

}  // namespace hashcount
