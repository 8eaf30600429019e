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

// Statistical property suites shared by `hashcount validate` and the
// acceptance tests.

#ifndef HASHCOUNT_VALIDATE_H_
#define HASHCOUNT_VALIDATE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hashcount {

// Fraction of `trials` fresh one-bit SimHashers that split two unit vectors
// at angle `theta`.
double AngularDisagreementRate(double theta, std::size_t trials,
                               std::uint64_t seed, std::size_t dim = 8);

struct OvercountCell {
  std::size_t rows = 0;
  std::uint64_t inserted = 0;  // N distinct keys per trial
  std::size_t trials = 0;
  std::uint64_t hits = 0;      // trials where a fresh key read > 0
  double theory = 0.0;         // prod_j (1 - exp(-N / p_j))
  double empirical() const;
  double standard_error() const;  // binomial, at the theoretical rate
  bool WithinSigmas(double sigmas) const;
};

// Inserts `inserted` random distinct keys into a fresh sketch over `primes`
// and queries one key that was never inserted, `trials` times.
OvercountCell MeasureOvercount(std::span<const std::uint64_t> primes,
                               std::uint64_t inserted, std::size_t trials,
                               std::uint64_t seed);

// Runs `sequences` random increment sequences against a small sketch and an
// exact table and returns the number of queries where the sketch read less
// than the exact count.
std::uint64_t CountUndercounts(std::size_t sequences, std::uint64_t seed);

struct GradcheckReport {
  std::size_t models = 0;
  std::size_t parameters = 0;
  double max_relative_error = 0.0;
};

// Compares analytic autoencoder gradients against central differences on
// `models` random models of at most 48 parameters. Relative error of one parameter is
// |a - f| / max(|a|, |f|, 1e-6).
GradcheckReport Gradcheck(std::size_t models, double step, std::uint64_t seed);

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs "lsh", "sketch", "gradcheck" or "all" at the documented tolerances.
// Throws kInvalidArgument for an unknown suite.
std::vector<CheckResult> RunValidationSuite(std::string_view suite);

}  // namespace hashcount

#endif  // HASHCOUNT_VALIDATE_H_
