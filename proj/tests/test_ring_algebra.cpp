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
#include <vector>

#include "doctest.h"
#include "padic_rigid/errors.hpp"
#include "padic_rigid/ring_algebra.hpp"
#include "padic_rigid/seed.hpp"

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

RingElement E(std::initializer_list<long> xs) {
  RingElement out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

RingElement random_element(std::size_t n, long H, SeedStream& s) {
  RingElement a(n);
  for (auto& x : a) x = static_cast<long>(s.uniform_range(-H, H));
  return a;
}

std::vector<RingPresentation> bundled() {
  return {integers_ring(), gaussian_integers_ring(), z_cross_z_ring(), upper_triangular_ring()};
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.size(), std::vector<mpz_class>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Smallest m with m v integral, by search.
long brute_order(const RationalVector& v) {
  for (long m = 1;; ++m) {
    bool ok = true;
    for (const auto& x : v) {
      mpq_class y = x * m;
      y.canonicalize();
      ok = ok && y.get_den() == 1;
    }
    if (ok) return m;
  }
}

// Independent 2x2 inverse for Z[i]: (x + yi)^{-1} = (x - yi) / (x^2 + y^2).
RationalVector gaussian_inverse(const RingElement& a) {
  const mpz_class n = a[0] * a[0] + a[1] * a[1];
  mpq_class re(a[0], n), im(-a[1], n);
  re.canonicalize();
  im.canonicalize();
  return {re, im};
}

}  // namespace

TEST_CASE("bundled rings validate") {
  for (const auto& r : bundled()) {
    CHECK(validate(r).empty());
    CHECK_NOTHROW(require_valid(r));
  }
}

TEST_CASE("broken tensor without identity is rejected") {
  RingPresentation r;
  r.name = "broken";
  r.rank = 2;
  r.structure.assign(2, std::vector<std::vector<mpz_class>>(2, std::vector<mpz_class>(2, 0)));
  r.structure[0][0] = {0, 1};  // e1 e1 = e2
  r.structure[1][0] = {1, 0};  // e2 e1 = e1
  r.identity = E({1, 0});
  const auto v = validate(r);
  CHECK_FALSE(v.empty());
  bool identity_failure = false;
  for (const auto& x : v) identity_failure |= x.kind == "left-identity" || x.kind == "right-identity";
  CHECK(identity_failure);
  CHECK(code_of([&] { require_valid(r); }) == ErrorCode::kInput);
}

TEST_CASE("shape violations") {
  RingPresentation r = integers_ring();
  r.identity = E({1, 0});
  CHECK_FALSE(validate(r).empty());
  RingPresentation big;
  big.rank = kMaxRingRank + 1;
  CHECK_FALSE(validate(big).empty());
}

TEST_CASE("regular representation examples") {
  const auto zi = gaussian_integers_ring();
  const IntMatrix mi = regular_rep(zi, E({0, 1}));
  CHECK(mi == IntMatrix{{0, -1}, {1, 0}});
  CHECK(regular_rep(zi, E({1, 0})) == IntMatrix{{1, 0}, {0, 1}});
  CHECK(regular_rep(zi, E({0, 0})) == IntMatrix{{0, 0}, {0, 0}});
  const auto ut = upper_triangular_ring();
  CHECK(regular_rep(ut, ut.identity) == IntMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

TEST_CASE("regular representation is a ring homomorphism") {
  SeedStream s(Seed(31));
  for (const auto& ring : bundled()) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_element(ring.rank, 5, s);
      const auto b = random_element(ring.rank, 5, s);
      const IntMatrix ra = regular_rep(ring, a), rb = regular_rep(ring, b);
      IntMatrix sum = ra;
      for (std::size_t i = 0; i < ring.rank; ++i)
        for (std::size_t j = 0; j < ring.rank; ++j) sum[i][j] += rb[i][j];
      CHECK(sum == regular_rep(ring, ring_add(a, b)));
      CHECK(mat_mul(ra, rb) == regular_rep(ring, ring_mul(ring, a, b)));
    }
  }
}

TEST_CASE("inversion examples") {
  const auto z = integers_ring();
  CHECK(invert_in_QA(z, E({2})) == RationalVector{mpq_class(1, 2)});
  CHECK(code_of([&] { invert_in_QA(z_cross_z_ring(), E({1, 0})); }) == ErrorCode::kNonInvertible);
  const auto zi = gaussian_integers_ring();
  const auto y = invert_in_QA(zi, E({2, 0}));
  CHECK(y == RationalVector{mpq_class(1, 2), mpq_class(0)});
  CHECK(ring_mul(zi, to_rational(E({2, 0})), y) == to_rational(zi.identity));
}

TEST_CASE("inversion round trips in every bundled ring") {
  SeedStream s(Seed(32));
  for (const auto& ring : bundled()) {
    int done = 0;
    while (done < 40) {
      const auto x = random_element(ring.rank, 6, s);
      RationalVector y;
      try {
        y = invert_in_QA(ring, x);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kNonInvertible);
        continue;
      }
      CHECK(ring_mul(ring, to_rational(x), y) == to_rational(ring.identity));
      CHECK(ring_mul(ring, y, to_rational(x)) == to_rational(ring.identity));
      ++done;
    }
  }
}

TEST_CASE("Gaussian inverse matches the conjugate formula") {
  SeedStream s(Seed(33));
  const auto zi = gaussian_integers_ring();
  for (int i = 0; i < 100; ++i) {
    auto x = random_element(2, 20, s);
    if (x[0] == 0 && x[1] == 0) continue;
    CHECK(invert_in_QA(zi, x) == gaussian_inverse(x));
  }
}

TEST_CASE("order in QA/A") {
  CHECK(order_in_QA_mod_A({mpq_class(1, 2), mpq_class(1, 3)}) == 6);
  CHECK(order_in_QA_mod_A({mpq_class(5), mpq_class(-2)}) == 1);
  CHECK(order_in_QA_mod_A({mpq_class(3, 4), mpq_class(1, 2)}) == 4);
  SeedStream s(Seed(34));
  for (int i = 0; i < 200; ++i) {
    RationalVector v;
    for (int k = 0; k < 3; ++k) {
      mpq_class q(static_cast<long>(s.uniform_range(-50, 50)), static_cast<unsigned long>(s.uniform_range(1, 30)));
      q.canonicalize();
      v.push_back(q);
    }
    CHECK(order_in_QA_mod_A(v) == brute_order(v));
  }
}

TEST_CASE("denominator polynomial examples") {
  const auto z = integers_ring();
  const auto d1 = denominator_polynomial(z, E({1}), E({1}));
  CHECK(d1.f == DensePoly{-1, 1});
  CHECK(d1.exceptional_primes.empty());

  const auto zi = gaussian_integers_ring();
  const auto d2 = denominator_polynomial(zi, E({0, 1}), E({1, 0}));
  CHECK(d2.f == DensePoly{1, 0, 1});

  const auto d3 = denominator_polynomial(z, E({2}), E({6}));
  CHECK(d3.f == DensePoly{-2, 1});
  CHECK(d3.exceptional_primes == std::vector<mpz_class>{2, 3});
  CHECK(d3.is_exceptional(2));
  CHECK(d3.is_exceptional(3));
  CHECK_FALSE(d3.is_exceptional(5));

  CHECK(code_of([&] { denominator_polynomial(z, E({1}), E({0})); }) == ErrorCode::kParameter);
}

TEST_CASE("root of the denominator forces divisibility of the order") {
  SeedStream s(Seed(35));
  const std::vector<unsigned long> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
  for (const auto& ring : bundled()) {
    for (int pair = 0; pair < 5; ++pair) {
      const auto a = random_element(ring.rank, 3, s);
      auto e = random_element(ring.rank, 3, s);
      if (std::all_of(e.begin(), e.end(), [](const mpz_class& x) { return x == 0; })) e[0] = 1;
      DenominatorData dd;
      try {
        dd = denominator_polynomial(ring, a, e);
      } catch (const Error&) {
        continue;
      }
      const auto& num = dd.coordinates[dd.coordinate].numerator;
      int checked = 0;
      for (int t = 0; t < 20; ++t) {
        const mpz_class c = static_cast<long>(s.uniform_range(-60, 60));
        if (dense::eval(dd.characteristic, c) == 0) continue;
        const auto inv = invert_in_QA(ring, ring_sub(ring_scalar(ring, c), a));
        const mpz_class m = order_in_QA_mod_A(ring_mul(ring, inv, to_rational(e)));
        for (unsigned long p : primes) {
          if (dd.is_exceptional(p)) continue;
          if (!mpz_divisible_ui_p(mpz_class(dense::eval(dd.f, c)).get_mpz_t(), p)) continue;
          if (mpz_divisible_ui_p(mpz_class(dense::eval(num, c)).get_mpz_t(), p)) continue;
          CHECK(mpz_divisible_ui_p(m.get_mpz_t(), p));
          ++checked;
        }
      }
      (void)checked;
    }
  }
}

TEST_CASE("prime factors and valuations") {
  CHECK(prime_factors(mpz_class(360)) == std::vector<mpz_class>{2, 3, 5});
  CHECK(prime_factors(mpz_class(-97)) == std::vector<mpz_class>{97});
  const mpz_class big = mpz_class("1000000007") * mpz_class("998244353");
  CHECK(prime_factors(big) == std::vector<mpz_class>{mpz_class("998244353"), mpz_class("1000000007")});
  CHECK(p_valuation(mpz_class(50), 5) == 2);
  CHECK(p_valuation(mpz_class(7), 5) == 0);
}
