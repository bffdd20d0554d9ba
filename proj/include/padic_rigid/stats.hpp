// Copyright 2026 The padic-rigid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padic_rigid/seed.hpp"

namespace padic_rigid {

/// Binomial tally. frequency() is empty when trials == 0.
struct TrialSummary {
  std::string experiment;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::optional<mpq_class> target;

  std::optional<mpq_class> frequency() const;
  /// Binomial standard error sqrt(t (1 - t) / trials) around the target.
  std::optional<double> sigma() const;
  /// (frequency - target) / sigma; empty without a target, trials or spread.
  std::optional<double> z_score() const;
  /// |frequency - target| <= 3 sigma (exact equality when sigma is 0).
  bool within_three_sigma() const;

  /// Count addition; the targets must agree.
  TrialSummary merged(const TrialSummary& other) const;
};

/// prod_{k=1..n} (q^n - q^(k-1)); q a prime power, n >= 1.
mpz_class gl_exact_count(int n, std::uint64_t q);

/// gl_exact_count(n, q) / q^(n^2) = prod_{k=1..n} (1 - q^(k-1) / q^n).
mpq_class gl_invertible_probability(int n, std::uint64_t q);

/// Rank of a matrix over F_q by Gaussian elimination (q prime).
std::size_t rank_mod_prime(std::vector<std::vector<std::uint64_t>> m, std::uint64_t q);

/// Invertibility frequency of uniform n x n matrices over F_q. Throws
/// kUnsupported unless q is prime.
TrialSummary gl_invertibility_mc(int n, std::uint64_t q, std::uint64_t trials, std::uint64_t seed,
                                 unsigned threads = 0);

bool is_prime_power(std::uint64_t q);

/// One Bernoulli trial per derived seed.
struct Experiment {
  std::string name;
  std::function<bool(const Seed&)> trial;
  std::optional<mpq_class> target;
};

using ExperimentParams = std::map<std::string, double>;

struct ExperimentDescriptor {
  std::string name;
  ExperimentParams params;
};

class ExperimentRegistry {
 public:
  using Factory = std::function<Experiment(const ExperimentParams&)>;

  void add(const std::string& name, Factory factory);
  /// Throws kParameter for an unregistered name.
  Experiment make(const ExperimentDescriptor& descriptor) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Factory> factories_;
};

/// Registry with the gl, containment, rigidity and independence experiments.
const ExperimentRegistry& default_registry();

/// Trials first_trial .. first_trial + trials - 1; trial i uses the seed
/// path (root, "trial", i), so results do not depend on the thread count.
TrialSummary run_trials(const Experiment& experiment, std::uint64_t trials, std::uint64_t seed,
                        std::uint64_t first_trial = 0, unsigned threads = 0);

TrialSummary run_trials(const ExperimentDescriptor& descriptor, std::uint64_t trials,
                        std::uint64_t seed, std::uint64_t first_trial = 0, unsigned threads = 0);

/// Parameter lookup with a default; throws kParameter when a required
/// parameter is missing.
double param_or(const ExperimentParams& params, const std::string& key, double fallback);

}  // namespace padic_rigid
