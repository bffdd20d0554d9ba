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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "padic_rigid/errors.hpp"
#include "padic_rigid/stats.hpp"

using namespace padic_rigid;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

// Leibniz determinant over F_p.
long leibniz_det(const std::vector<std::vector<long>>& m, long p) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  long det = 0;
  do {
    long term = 1;
    for (std::size_t i = 0; i < n; ++i) term = term * m[i][perm[i]] % p;
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    det = (det + (inversions % 2 ? p - term : term)) % p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Invertible n x n matrices over F_p, by enumeration.
long brute_gl(int n, long p) {
  const int cells = n * n;
  long total = 1;
  for (int i = 0; i < cells; ++i) total *= p;
  long count = 0;
  std::vector<std::vector<long>> m(n, std::vector<long>(n));
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < cells; ++i) {
      m[i / n][i % n] = c % p;
      c /= p;
    }
    count += leibniz_det(m, p) != 0;
  }
  return count;
}

}  // namespace

TEST_CASE("exact GL counts") {
  CHECK(gl_exact_count(1, 2) == 1);
  CHECK(gl_exact_count(2, 2) == 6);
  CHECK(gl_exact_count(2, 3) == 48);
  CHECK(gl_exact_count(2, 4) == 180);
  for (auto [n, q] : std::vector<std::pair<int, long>>{{1, 2}, {2, 2}, {2, 3}, {3, 2}}) {
    CHECK(gl_exact_count(n, q) == brute_gl(n, q));
  }
  CHECK(code_of([] { gl_exact_count(2, 6); }) == ErrorCode::kParameter);
}

TEST_CASE("invertibility probability") {
  CHECK(gl_invertible_probability(1, 2) == mpq_class(1, 2));
  CHECK(gl_invertible_probability(2, 2) == mpq_class(3, 8));
  for (auto [n, q] : std::vector<std::pair<int, unsigned long>>{{1, 2}, {2, 3}, {3, 5}, {4, 7}}) {
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), q, static_cast<unsigned long>(n * n));
    mpq_class direct(gl_exact_count(n, q), total);
    direct.canonicalize();
    CHECK(gl_invertible_probability(n, q) == direct);
    // Product form.
    mpq_class prod = 1;
    mpz_class qn, qk = 1;
    mpz_ui_pow_ui(qn.get_mpz_t(), q, static_cast<unsigned long>(n));
    for (int k = 1; k <= n; ++k) {
      prod *= 1 - mpq_class(qk, qn);
      qk *= q;
    }
    prod.canonicalize();
    CHECK(gl_invertible_probability(n, q) == prod);
  }
}

TEST_CASE("rank over F_q against the Leibniz determinant") {
  SeedStream s(Seed(61));
  for (int t = 0; t < 300; ++t) {
    const int n = static_cast<int>(s.uniform_range(1, 4));
    const long q = std::vector<long>{2, 3, 5, 7}[s.uniform_below(4)];
    std::vector<std::vector<long>> m(n, std::vector<long>(n));
    std::vector<std::vector<std::uint64_t>> mu(n, std::vector<std::uint64_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mu[i][j] = static_cast<std::uint64_t>(m[i][j] = static_cast<long>(s.uniform_below(q)));
    CHECK((rank_mod_prime(mu, q) == static_cast<std::size_t>(n)) == (leibniz_det(m, q) != 0));
  }
}

TEST_CASE("Monte Carlo GL frequency") {
  const auto s = gl_invertibility_mc(3, 3, 100000, 7);
  CHECK(s.trials == 100000);
  CHECK(*s.target == gl_invertible_probability(3, 3));
  CHECK(s.within_three_sigma());
  CHECK(code_of([] { gl_invertibility_mc(2, 4, 10, 1); }) == ErrorCode::kUnsupported);
}

TEST_CASE("trial summaries") {
  TrialSummary empty;
  CHECK_FALSE(empty.frequency().has_value());
  CHECK_FALSE(empty.z_score().has_value());
  const ExperimentDescriptor gl{"gl", {{"n", 2}, {"q", 3}}};
  const auto zero = run_trials(gl, 0, 5);
  CHECK(zero.trials == 0);
  CHECK_FALSE(zero.frequency().has_value());

  const auto a = run_trials(gl, 500, 5);
  const auto b = run_trials(gl, 500, 5);
  CHECK(a.successes == b.successes);
  mpq_class expected(a.successes, 500);
  expected.canonicalize();
  CHECK(*a.frequency() == expected);

  // Disjoint ranges of the same stream merge into the combined run.
  const auto lo = run_trials(gl, 300, 5, 0);
  const auto hi = run_trials(gl, 200, 5, 300);
  const auto both = lo.merged(hi);
  CHECK(both.trials == 500);
  CHECK(both.successes == a.successes);
  TrialSummary other = a;
  other.experiment = "containment";
  CHECK(code_of([&] { a.merged(other); }) == ErrorCode::kIncompatibleOperands);
}

TEST_CASE("results do not depend on the thread count") {
  const ExperimentDescriptor gl{"gl", {{"n", 3}, {"q", 2}}};
  CHECK(run_trials(gl, 2000, 9, 0, 1).successes == run_trials(gl, 2000, 9, 0, 4).successes);
  const ExperimentDescriptor c{"containment", {{"k", 1}, {"n", 3}, {"alpha", 1.5}}};
  CHECK(run_trials(c, 2000, 9, 0, 1).successes == run_trials(c, 2000, 9, 0, 3).successes);
}

TEST_CASE("registry") {
  const auto names = default_registry().names();
  CHECK(names == std::vector<std::string>{"containment", "gl", "independence", "rigidity"});
  CHECK(code_of([] { run_trials(ExperimentDescriptor{"nope", {}}, 1, 0); }) == ErrorCode::kParameter);
  CHECK(code_of([] { run_trials(ExperimentDescriptor{"gl", {{"n", 2}}}, 1, 0); }) == ErrorCode::kParameter);
  CHECK(code_of([] { run_trials(ExperimentDescriptor{"gl", {{"n", 2}, {"q", 4}}}, 1, 0); }) ==
        ErrorCode::kUnsupported);
}

TEST_CASE("prime powers") {
  CHECK(is_prime_power(2));
  CHECK(is_prime_power(9));
  CHECK(is_prime_power(32));
  CHECK_FALSE(is_prime_power(6));
  CHECK_FALSE(is_prime_power(1));
}
