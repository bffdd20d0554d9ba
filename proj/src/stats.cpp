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

#include "padic_rigid/stats.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "padic_rigid/errors.hpp"
#include "padic_rigid/padic.hpp"
#include "padic_rigid/parallel.hpp"

namespace padic_rigid {

std::optional<mpq_class> TrialSummary::frequency() const {
  if (trials == 0) return std::nullopt;
  mpq_class f(static_cast<unsigned long>(successes), static_cast<unsigned long>(trials));
  f.canonicalize();
  return f;
}

std::optional<double> TrialSummary::sigma() const {
  if (!target || trials == 0) return std::nullopt;
  const double t = target->get_d();
  return std::sqrt(t * (1.0 - t) / static_cast<double>(trials));
}

std::optional<double> TrialSummary::z_score() const {
  const auto s = sigma();
  const auto f = frequency();
  if (!s || !f || *s == 0.0) return std::nullopt;
  return (f->get_d() - target->get_d()) / *s;
}

bool TrialSummary::within_three_sigma() const {
  const auto f = frequency();
  const auto s = sigma();
  if (!f || !s) return false;
  if (*s == 0.0) return *f == *target;
  return std::abs(f->get_d() - target->get_d()) <= 3.0 * *s;
}

TrialSummary TrialSummary::merged(const TrialSummary& other) const {
  if (experiment != other.experiment || target != other.target) {
    fail(ErrorCode::kIncompatibleOperands, "TrialSummary::merged: summaries describe different experiments");
  }
  TrialSummary out = *this;
  out.trials += other.trials;
  out.successes += other.successes;
  return out;
}

bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p != 0) continue;
    while (q % p == 0) q /= p;
    return q == 1;
  }
  return true;
}

mpz_class gl_exact_count(int n, std::uint64_t q) {
  if (n < 1 || n > 64) fail(ErrorCode::kParameter, "gl_exact_count: n must lie in [1, 64]");
  if (!is_prime_power(q)) fail(ErrorCode::kParameter, "gl_exact_count: q must be a prime power");
  mpz_class qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(n));
  mpz_class count = 1, qk = 1;
  for (int k = 1; k <= n; ++k) {
    count *= qn - qk;
    qk *= static_cast<unsigned long>(q);
  }
  return count;
}

mpq_class gl_invertible_probability(int n, std::uint64_t q) {
  mpz_class total;
  mpz_ui_pow_ui(total.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(n * n));
  mpq_class out(gl_exact_count(n, q), total);
  out.canonicalize();
  return out;
}

std::size_t rank_mod_prime(std::vector<std::vector<std::uint64_t>> m, std::uint64_t q) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  auto mulmod = [q](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
  };
  auto inv = [&](std::uint64_t a) {
    std::uint64_t r = 1, e = q - 2;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] % q == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const std::uint64_t pinv = inv(m[rank][c] % q);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::uint64_t f = mulmod(m[r][c] % q, pinv);
      if (f == 0) continue;
      for (std::size_t k = c; k < cols; ++k) {
        m[r][k] = (m[r][k] % q + q - mulmod(f, m[rank][k] % q)) % q;
      }
    }
    ++rank;
  }
  return rank;
}

TrialSummary gl_invertibility_mc(int n, std::uint64_t q, std::uint64_t trials, std::uint64_t seed,
                                 unsigned threads) {
  if (n < 1 || n > 64) fail(ErrorCode::kParameter, "gl_invertibility_mc: n must lie in [1, 64]");
  if (!is_prime_u64(q)) {
    fail(ErrorCode::kUnsupported, "gl_invertibility_mc: field arithmetic is implemented for prime q only");
  }
  Experiment e;
  e.name = "gl";
  e.target = gl_invertible_probability(n, q);
  e.trial = [n, q](const Seed& s) {
    SeedStream stream(s);
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n));
    for (auto& row : m) {
      for (auto& x : row) x = stream.uniform_below(q);
    }
    return rank_mod_prime(std::move(m), q) == static_cast<std::size_t>(n);
  };
  return run_trials(e, trials, seed, 0, threads);
}

void ExperimentRegistry::add(const std::string& name, Factory factory) {
  factories_[name] = std::move(factory);
}

Experiment ExperimentRegistry::make(const ExperimentDescriptor& descriptor) const {
  const auto it = factories_.find(descriptor.name);
  if (it == factories_.end()) {
    fail(ErrorCode::kParameter, "unknown experiment '" + descriptor.name + "'");
  }
  Experiment e = it->second(descriptor.params);
  e.name = descriptor.name;
  return e;
}

std::vector<std::string> ExperimentRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, f] : factories_) out.push_back(name);
  return out;
}

TrialSummary run_trials(const Experiment& experiment, std::uint64_t trials, std::uint64_t seed,
                        std::uint64_t first_trial, unsigned threads) {
  TrialSummary summary;
  summary.experiment = experiment.name;
  summary.trials = trials;
  summary.target = experiment.target;
  const Seed root(seed);
  std::vector<char> hit(trials, 0);
  parallel_for(
      trials,
      [&](std::size_t i) {
        hit[i] = experiment.trial(root.path("trial", static_cast<std::int64_t>(first_trial + i)));
      },
      threads);
  for (char h : hit) summary.successes += h != 0;
  return summary;
}

TrialSummary run_trials(const ExperimentDescriptor& descriptor, std::uint64_t trials,
                        std::uint64_t seed, std::uint64_t first_trial, unsigned threads) {
  return run_trials(default_registry().make(descriptor), trials, seed, first_trial, threads);
}

double param_or(const ExperimentParams& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  if (it != params.end()) return it->second;
  if (std::isnan(fallback)) fail(ErrorCode::kParameter, "missing experiment parameter '" + key + "'");
  return fallback;
}

}  // namespace padic_rigid
