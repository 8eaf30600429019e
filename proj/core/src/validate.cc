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

#include "hashcount/validate.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "hashcount/autoencoder.h"
#include "hashcount/count_key.h"
#include "hashcount/counter.h"
#include "hashcount/error.h"
#include "hashcount/hashing.h"
#include "hashcount/seed.h"

namespace hashcount {
namespace {

std::string Format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return buf;
}

CountKey RandomKey(Rng& rng) {
  const std::int64_t v = static_cast<std::int64_t>(rng());
  return EncodeKey(std::span<const std::int64_t>(&v, 1));
}

}  // namespace

double AngularDisagreementRate(double theta, std::size_t trials,
                               std::uint64_t seed, std::size_t dim) {
  if (dim < 2) throw Error(ErrorCode::kInvalidDimension, "need at least 2 dimensions");
  if (trials == 0) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  std::vector<double> u(dim, 0.0);
  std::vector<double> v(dim, 0.0);
  u[0] = 1.0;
  v[0] = std::cos(theta);
  v[1] = std::sin(theta);
  std::size_t split = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    SimHasher h(1, dim, MixSeed(seed, t));
    if (h.Hash(u)[0] != h.Hash(v)[0]) ++split;
  }
  return static_cast<double>(split) / static_cast<double>(trials);
}

double OvercountCell::empirical() const {
  return trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
}

double OvercountCell::standard_error() const {
  if (trials == 0) return 0.0;
  return std::sqrt(theory * (1.0 - theory) / static_cast<double>(trials));
}

bool OvercountCell::WithinSigmas(double sigmas) const {
  return std::abs(empirical() - theory) <= sigmas * standard_error();
}

OvercountCell MeasureOvercount(std::span<const std::uint64_t> primes,
                               std::uint64_t inserted, std::size_t trials,
                               std::uint64_t seed) {
  OvercountCell cell;
  cell.rows = primes.size();
  cell.inserted = inserted;
  cell.trials = trials;
  cell.theory = 1.0;
  for (std::uint64_t p : primes) {
    cell.theory *= 1.0 - std::exp(-static_cast<double>(inserted) / static_cast<double>(p));
  }
  Rng rng(seed);
  std::vector<CountKey> keys;
  for (std::size_t t = 0; t < trials; ++t) {
    CountMinSketch sketch(primes);
    keys.clear();
    for (std::uint64_t i = 0; i < inserted; ++i) {
      keys.push_back(RandomKey(rng));
      sketch.Increment(keys.back());
    }
    CountKey fresh = RandomKey(rng);
    while (std::find(keys.begin(), keys.end(), fresh) != keys.end()) fresh = RandomKey(rng);
    if (sketch.Query(fresh) > 0) ++cell.hits;
  }
  return cell;
}

std::uint64_t CountUndercounts(std::size_t sequences, std::uint64_t seed) {
  static constexpr std::array<std::uint64_t, 6> kTiny = {2, 3, 5, 7, 11, 13};
  Rng rng(seed);
  std::uint64_t violations = 0;
  std::vector<std::uint64_t> primes;
  std::vector<CountKey> keys;
  std::vector<std::uint64_t> exact;
  for (std::size_t s = 0; s < sequences; ++s) {
    primes.clear();
    for (std::uint64_t p : kTiny) {
      if (rng() & 1) primes.push_back(p);
    }
    if (primes.empty()) primes.push_back(kTiny[rng() % kTiny.size()]);
    CountMinSketch sketch(primes);

    const std::size_t n_keys = 1 + rng() % 8;
    keys.clear();
    for (std::size_t k = 0; k < n_keys; ++k) keys.push_back(RandomKey(rng));
    exact.assign(n_keys, 0);

    const std::size_t n_ops = 1 + rng() % 24;
    for (std::size_t op = 0; op < n_ops; ++op) {
      const std::size_t k = rng() % n_keys;
      sketch.Increment(keys[k]);
      ++exact[k];
    }
    for (std::size_t k = 0; k < n_keys; ++k) {
      if (sketch.Query(keys[k]) < exact[k]) ++violations;
    }
  }
  return violations;
}

GradcheckReport Gradcheck(std::size_t models, double step, std::uint64_t seed) {
  GradcheckReport report;
  report.models = models;
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> bias(-0.5, 0.5);
  for (std::size_t m = 0; m < models; ++m) {
    // At most 48 parameters.
    const std::size_t input = 2 + rng() % 2;
    const std::size_t hidden = 2 + rng() % 2;
    const std::size_t code = 1 + rng() % 3;
    std::vector<std::size_t> sizes = {input};
    if (rng() % 4 != 0) sizes.push_back(hidden);
    AutoencoderModel model = AutoencoderModel::Create(sizes, code, 0.3, 10.0, rng());
    for (auto& layer : model.layers()) {
      for (Eigen::Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) = bias(rng);
    }
    const std::size_t n = 2 + rng() % 3;
    Eigen::MatrixXd x(static_cast<Eigen::Index>(input), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = unit(rng);
    TrainBatch batch(x);
    const Eigen::MatrixXd noise = SampleNoise(model, n, rng);

    const LayerStack analytic = Gradient(model, batch, noise).gradient;
    AutoencoderModel probe = model;
    auto check = [&](double& param, double a) {
      const double saved = param;
      param = saved + step;
      const double up = Loss(probe, batch, noise);
      param = saved - step;
      const double down = Loss(probe, batch, noise);
      param = saved;
      const double fd = (up - down) / (2.0 * step);
      const double scale = std::max({std::abs(a), std::abs(fd), 1e-6});
      report.max_relative_error = std::max(report.max_relative_error, std::abs(a - fd) / scale);
      ++report.parameters;
    };
    for (std::size_t l = 0; l < probe.layers().size(); ++l) {
      auto& layer = probe.layers()[l];
      for (Eigen::Index i = 0; i < layer.weights.size(); ++i) {
        check(layer.weights.data()[i], analytic[l].weights.data()[i]);
      }
      for (Eigen::Index i = 0; i < layer.bias.size(); ++i) {
        check(layer.bias(i), analytic[l].bias(i));
      }
    }
  }
  return report;
}

std::vector<CheckResult> RunValidationSuite(std::string_view suite) {
  const bool all = suite == "all";
  if (!all && suite != "lsh" && suite != "sketch" && suite != "gradcheck") {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown suite '" + std::string(suite) + "' (lsh, sketch, gradcheck, all)");
  }
  std::vector<CheckResult> out;

  if (all || suite == "lsh") {
    const double pi = std::numbers::pi;
    const std::array<std::pair<const char*, double>, 3> angles = {
        {{"theta=0", 0.0}, {"theta=pi/4", pi / 4}, {"theta=pi/2", pi / 2}}};
    std::uint64_t cell = 0;
    for (const auto& [name, theta] : angles) {
      const double rate = AngularDisagreementRate(theta, 100000, MixSeed(11, cell++));
      const double expected = theta / pi;
      const bool ok = theta == 0.0 ? rate == 0.0 : std::abs(rate - expected) <= 0.01;
      out.push_back({"lsh", std::string("angular ") + name, ok,
                     Format("rate %.5f, expected %.5f", rate, expected)});
    }
  }

  if (all || suite == "sketch") {
    const std::array<std::size_t, 4> rows = {1, 2, 4, 6};
    const std::array<double, 3> loads = {0.05, 0.1, 0.5};
    std::uint64_t cell = 0;
    for (std::size_t l : rows) {
      for (double load : loads) {
        const auto primes = std::span<const std::uint64_t>(kSmallPrimes).first(l);
        const auto n = static_cast<std::uint64_t>(std::llround(load * 1000.0));
        OvercountCell c = MeasureOvercount(primes, n, 10000, MixSeed(23, cell++));
        out.push_back({"sketch",
                       "overcount l=" + std::to_string(l) + " N=" + std::to_string(n),
                       c.WithinSigmas(3.0),
                       Format("empirical %.6f, theory %.6f, se %.6f", c.empirical(),
                              c.theory, c.standard_error())});
      }
    }
    const std::uint64_t bad = CountUndercounts(1000000, 29);
    out.push_back({"sketch", "never undercounts", bad == 0,
                   Format("%.0f violations in 1e6 sequences", static_cast<double>(bad))});
  }

  if (all || suite == "gradcheck") {
    GradcheckReport r = Gradcheck(20, 1e-5, 31);
    out.push_back({"gradcheck", "autoencoder backprop", r.max_relative_error < 1e-4,
                   Format("max rel. error %.3g over %.0f parameters", r.max_relative_error,
                          static_cast<double>(r.parameters))});
  }
  return out;
}

}  // namespace hashcount
