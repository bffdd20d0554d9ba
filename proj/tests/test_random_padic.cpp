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

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "doctest.h"
#include "padic_rigid/errors.hpp"
#include "padic_rigid/random_padic.hpp"

using namespace padic_rigid;

namespace {

// Upper tail of chi-square with 8 degrees of freedom: Q(4, x/2) in closed form.
double chi_square_8_pvalue(double x) {
  const double y = x / 2.0;
  return std::exp(-y) * (1.0 + y + y * y / 2.0 + y * y * y / 6.0);
}

BitSequence seq(int length, std::uint64_t bits) { return BitSequence{length, bits}; }

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

TEST_CASE("uniform bits at N=1 are balanced") {
  int ones = 0;
  for (std::uint64_t s = 0; s < 10000; ++s) ones += sample_uniform(2, 1, Seed(s)).residue() == 1;
  CHECK(std::abs(ones / 10000.0 - 0.5) <= 0.05);
}

TEST_CASE("uniform samples refine consistently") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    CHECK(reduce_precision(sample_uniform(3, 8, Seed(s)), 4) == sample_uniform(3, 4, Seed(s)));
    CHECK(reduce_precision(sample_uniform(2, 8, Seed(s)), 4) == sample_uniform(2, 4, Seed(s)));
  }
}

TEST_CASE("uniform residues mod 9 pass a chi-square test") {
  std::vector<long> counts(9, 0);
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) {
    counts[sample_uniform(3, 2, Seed(1000 + s)).residue().get_ui()]++;
  }
  double stat = 0;
  const double expected = draws / 9.0;
  for (long c : counts) stat += (c - expected) * (c - expected) / expected;
  CHECK(chi_square_8_pvalue(stat) > 0.001);
}

TEST_CASE("tree shapes and digit ranges") {
  const auto t0 = sample_tree(5, 0, Seed(1));
  CHECK(t0.digit_count() == 1);
  CHECK(t0.digit(seq(0, 0)) < 5);
  CHECK(sample_tree(2, 2, Seed(1)).digit_count() == 7);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto t = sample_tree(3, 3, Seed(s));
    for (int n = 0; n <= 3; ++n) {
      const mpz_class bound = tree_digit_bound(3, n);
      for (const auto& d : t.levels()[n]) CHECK((d >= 0 && d < bound));
    }
  }
}

TEST_CASE("partial sums and branch values on a hand-built tree") {
  const TreeCoefficients t(2, 1, {{1}, {3, 0}});
  const auto b_empty = partial_sum_b(t, seq(0, 0));
  CHECK(b_empty.residue() == 1);
  CHECK(b_empty.precision() == 1);
  const auto b0 = partial_sum_b(t, seq(1, 0));
  CHECK(b0.residue() == 7);
  CHECK(b0.precision() == 3);
  CHECK(xi_of_branch(t, seq(1, 0)).residue() == 7);
  const TreeCoefficients zero(3, 2, {{0}, {0, 0}, {0, 0, 0, 0}});
  CHECK(xi_of_branch(zero, seq(2, 3)).residue() == 0);
  CHECK(partial_sum_b(zero, seq(1, 1)).residue() == 0);
}

TEST_CASE("tree input validation") {
  CHECK_THROWS_AS(TreeCoefficients(2, 1, {{2}, {0, 0}}), Error);
  CHECK_THROWS_AS(TreeCoefficients(2, 1, {{1}, {4, 0}}), Error);
  CHECK_THROWS_AS(TreeCoefficients(2, 1, {{1}}), Error);
  const auto t = sample_tree(2, 2, Seed(3));
  CHECK_THROWS_AS(partial_sum_b(t, seq(3, 0)), Error);
  CHECK_THROWS_AS(xi_of_branch(t, seq(1, 0)), Error);
}

TEST_CASE("branch values reduce to every partial sum along the branch") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    for (int depth = 0; depth <= 3; ++depth) {
      const auto t = sample_tree(s % 2 == 0 ? 2 : 5, depth, Seed(s).child("congruence"));
      for (std::uint64_t f = 0; f < (1ULL << depth); ++f) {
        const auto xi = xi_of_branch(t, seq(depth, f));
        CHECK(xi.precision() == tree_precision(depth));
        for (int n = 0; n <= depth; ++n) {
          const auto b = partial_sum_b(t, seq(depth, f).prefix(n));
          CHECK(reduce_precision(xi, tree_precision(n)) == b);
        }
      }
    }
  }
}

TEST_CASE("branches agree up to the level where they split") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto t = sample_tree(3, 4, Seed(s));
    for (std::uint64_t f = 0; f < 16; ++f) {
      for (std::uint64_t g = f + 1; g < 16; ++g) {
        int j = 0;
        while (((f >> j) & 1U) == ((g >> j) & 1U)) ++j;
        // Prefixes of length j coincide, so b at level j is shared.
        const int prec = tree_precision(j);
        CHECK(reduce_precision(xi_of_branch(t, seq(4, f)), prec) ==
              reduce_precision(xi_of_branch(t, seq(4, g)), prec));
      }
    }
  }
}

TEST_CASE("partial sums have the exact uniform and conditional laws at p=2, depth 2") {
  // Independent oracle: enumerate the digits along one path (a_<>, a_s|1, a_s),
  // which determine b at every prefix; each full tree assignment repeats each
  // path assignment equally often.
  const long p = 2;
  std::map<std::pair<long, long>, long> joint;  // (b_{s|1} mod p^3, b_s mod p^7)
  std::map<long, long> marginal;
  for (long a0 = 0; a0 < p; ++a0) {
    for (long a1 = 0; a1 < ipow(p, 2); ++a1) {
      for (long a2 = 0; a2 < ipow(p, 4); ++a2) {
        const TreeCoefficients t(2, 2, {{a0}, {a1, a1}, {a2, a2, a2, a2}});
        const long b1 = partial_sum_b(t, seq(1, 0)).residue().get_si();
        const long b2 = partial_sum_b(t, seq(2, 0)).residue().get_si();
        CHECK(b1 == a0 + p * a1);
        CHECK(b2 == a0 + p * a1 + ipow(p, 3) * a2);
        joint[{b1, b2}]++;
        marginal[b2]++;
      }
    }
  }
  CHECK(marginal.size() == 128);
  for (const auto& [b, c] : marginal) CHECK(c == 1);
  for (long d = 0; d < 8; ++d) {
    long total = 0;
    for (long c = 0; c < 128; ++c) total += joint.count({d, c}) ? joint[{d, c}] : 0;
    for (long c = 0; c < 128; ++c) {
      const long n = joint.count({d, c}) ? joint[{d, c}] : 0;
      if (c % 8 == d) {
        CHECK(n * ipow(p, 4) == total);
      } else {
        CHECK(n == 0);
      }
    }
  }
}

TEST_CASE("supports are non-empty and cover small sets") {
  int singleton_zero = 0;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const auto I = sample_support(0, Seed(s));
    CHECK(!I.empty());
    singleton_zero += I == std::set<std::size_t>{0};
  }
  CHECK(singleton_zero > 0);

  int covered = 0;
  const int experiments = 1000;
  for (int e = 0; e < experiments; ++e) {
    for (int n = 0; n <= 200; ++n) {
      const auto I = sample_support(0, Seed(77).path("cover", e, n));
      if (I.count(0) && I.count(1)) {
        ++covered;
        break;
      }
    }
  }
  CHECK(covered >= 0.99 * experiments);
}

TEST_CASE("support hint bounds the indices") {
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const auto I = sample_support(3, Seed(s));
    CHECK(!I.empty());
    CHECK(I.size() <= 3);
    CHECK(*I.rbegin() < 3);
  }
}

TEST_CASE("nearly uniform window and coset bound") {
  CHECK(nearly_uniform_window(4, 1.5) == 2);
  const std::size_t w = nearly_uniform_window(4, 1.5);
  const double coset_log2 = -4.0 * static_cast<double>(w + 1);
  CHECK(coset_log2 == -12.0);
  CHECK(coset_log2 <= -std::pow(4.0, 1.5));
  for (int n = 1; n <= 40; ++n) {
    for (double alpha : {1.2, 1.5, 2.0}) {
      CHECK(static_cast<double>(n) * (nearly_uniform_window(n, alpha) + 1) >= std::pow(n, alpha) - 1e-9);
    }
  }
  CHECK_THROWS_AS(sample_nearly_uniform(2, 4, 1.0, Seed(0)), Error);
}

TEST_CASE("nearly uniform samples are in range and refine") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto a4 = sample_nearly_uniform(2, 4, 1.5, Seed(s));
    for (const auto& [i, v] : a4.entries()) {
      CHECK(i <= 2);
      CHECK(v < 16);
    }
    const auto a3 = sample_nearly_uniform(2, 3, 1.5, Seed(s));
    CHECK(a3 == restrict_window(reduce_precision(a4, 3), nearly_uniform_window(3, 1.5) + 1));
  }
}

TEST_CASE("supported element validation") {
  SupportedElement se;
  CHECK_THROWS_AS(validate_supported_element(se), Error);
  se.support = {0, 2};
  se.coefficients.emplace(0, PadicApprox::from_integer(7, 2, 3));
  CHECK_THROWS_AS(validate_supported_element(se), Error);
  se.coefficients.emplace(2, PadicApprox::from_integer(7, 2, 5));
  CHECK_NOTHROW(validate_supported_element(se));
}
