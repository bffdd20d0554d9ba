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

#include <cstdint>
#include <vector>

#include "doctest.h"
#include "padic_rigid/errors.hpp"
#include "padic_rigid/independence.hpp"
#include "padic_rigid/lattice.hpp"
#include "padic_rigid/random_padic.hpp"

using namespace padic_rigid;

namespace {

PadicApprox P(std::uint64_t p, int n, const mpz_class& v) { return PadicApprox::from_integer(p, n, v); }

IntPolynomial X(std::size_t k, std::size_t i) { return IntPolynomial::variable(k, i); }
IntPolynomial C(std::size_t k, long c) { return IntPolynomial::constant(k, c); }

long brute_count(const IntPolynomial& g, long p, int n) {
  long m = 1;
  for (int i = 0; i < n; ++i) m *= p;
  long count = 0;
  for (long x = 0; x < m; ++x) {
    const mpz_class xs[1] = {x};
    count += evaluate_mod(g, xs, m) == 0;
  }
  return count;
}

IntPolynomial linear_product(const IntPolynomial& h, const std::vector<mpz_class>& lambdas) {
  IntPolynomial g = h;
  for (const auto& l : lambdas) g = g * (X(1, 0) - IntPolynomial::constant(1, l));
  return g;
}

// Every vector with entries in [-H, H] and the given length, checked against
// the relation by direct evaluation.
bool brute_relation_exists(const std::vector<mpz_class>& monomial_values, long H, const mpz_class& m) {
  const std::size_t n = monomial_values.size();
  std::vector<long> c(n, -H);
  for (;;) {
    bool nonzero = false;
    mpz_class s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      nonzero = nonzero || c[i] != 0;
      s += monomial_values[i] * c[i];
    }
    if (nonzero && s % m == 0) return true;
    std::size_t i = 0;
    while (i < n && c[i] == H) c[i++] = -H;
    if (i == n) return false;
    ++c[i];
  }
}

}  // namespace

TEST_CASE("evaluate examples") {
  CHECK(evaluate(X(1, 0), {P(7, 2, 5)}).residue() == 5);
  const auto commutator = X(2, 0) * X(2, 1) - X(2, 1) * X(2, 0);
  CHECK(commutator.is_zero());
  CHECK(evaluate(commutator, {P(3, 2, 4), P(3, 2, 5)}).residue() == 0);
  CHECK(evaluate(IntPolynomial::parse("x^2+1"), {P(5, 2, 7)}).residue() == 0);
  CHECK_THROWS_AS(evaluate(X(2, 0), {P(5, 2, 1)}), Error);
  CHECK_THROWS_AS(evaluate(X(2, 0) + X(2, 1), {P(5, 2, 1), P(5, 3, 1)}), Error);
}

TEST_CASE("monomial order") {
  const auto m = monomials_up_to(2, 2);
  REQUIRE(m.size() == 6);
  CHECK(m[0] == IntPolynomial::Exponents{0, 0});
  CHECK(m[1] == IntPolynomial::Exponents{1, 0});
  CHECK(m[2] == IntPolynomial::Exponents{0, 1});
  CHECK(m[3] == IntPolynomial::Exponents{2, 0});
  CHECK(m[4] == IntPolynomial::Exponents{1, 1});
  CHECK(m[5] == IntPolynomial::Exponents{0, 2});
  CHECK(monomials_up_to(4, 2).size() == 15);
}

TEST_CASE("find_relation recovers a constructed square relation") {
  const mpz_class mod = 15625;
  const auto r = find_relation({P(5, 6, 7), P(5, 6, mpz_class(49) % mod)}, 2, 1);
  REQUIRE(r.found);
  CHECK(*r.witness == X(2, 1) - X(2, 0) * X(2, 0));
  CHECK(r.precision == 6);
}

TEST_CASE("find_relation on zero") {
  const auto r = find_relation({P(5, 4, 0)}, 1, 1);
  REQUIRE(r.found);
  CHECK(*r.witness == X(1, 0));
}

TEST_CASE("find_relation limits") {
  std::vector<PadicApprox> xs(6, P(7, 4, 3));
  RelationLimits limits;
  limits.max_monomials = 20;
  CHECK_THROWS_AS(find_relation(xs, 2, 1, limits), Error);
}

TEST_CASE("find_relation matches brute force on small boxes") {
  SeedStream s(Seed(9).child("relations"));
  int found = 0;
  for (int t = 0; t < 150; ++t) {
    const std::uint64_t p = (t % 3 == 0) ? 2 : (t % 3 == 1 ? 3 : 5);
    const int n = 2 + static_cast<int>(s.uniform_below(4));
    const std::vector<PadicApprox> xs = {P(p, n, s.uniform_digits(p, n)), P(p, n, s.uniform_digits(p, n))};
    const long H = 1 + static_cast<long>(s.uniform_below(2));
    const auto r = find_relation(xs, 1, H);
    const mpz_class m = xs[0].modulus();
    const bool expected = brute_relation_exists({1, xs[0].residue(), xs[1].residue()}, H, m);
    CHECK(r.found == expected);
    if (r.found) {
      ++found;
      CHECK(evaluate(*r.witness, xs).residue() == 0);
      CHECK(r.witness->height() <= H);
    }
  }
  CHECK(found > 0);
}

TEST_CASE("branch values from a depth-4 tree carry no small relation") {
  const auto t = sample_tree(7, 4, Seed(1));
  std::vector<PadicApprox> xs;
  for (std::uint64_t f : {0b0000ULL, 0b1110ULL, 0b0001ULL, 0b1111ULL}) {
    xs.push_back(xi_of_branch(t, BitSequence{4, f}));
  }
  const auto r = find_relation(xs, 2, 10);
  CHECK_FALSE(r.found);
  CHECK(r.monomials == 15);
}

TEST_CASE("lattice helpers") {
  const IntBasis b = {{1, 0, 0}, {4, 1, 0}, {0, 0, 3}};
  const auto red = lll_reduce(b);
  CHECK(red.size() == 3);
  const auto h = hnf_basis({{2, 4}, {0, 6}, {4, 2}}, 2);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == IntVector{2, 4});
  CHECK(h[1] == IntVector{0, 6});
}

TEST_CASE("count_roots examples") {
  CHECK(count_roots_mod_pN(IntPolynomial::parse("x^2-1"), 2, 3) == 4);
  CHECK(count_roots_mod_pN(X(1, 0), 3, 5) == 1);
  CHECK(count_roots_mod_pN(IntPolynomial::parse("x^2+1"), 5, 2) == 2);
  CHECK_THROWS_AS(count_roots_mod_pN(IntPolynomial(1), 5, 2), Error);
}

TEST_CASE("count_roots agrees with exhaustive search") {
  SeedStream s(Seed(21).child("roots"));
  for (int t = 0; t < 120; ++t) {
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5, 7}[t % 4];
    int n = 1;
    long m = static_cast<long>(p);
    while (m * static_cast<long>(p) <= 20000 && s.uniform_below(3) != 0) {
      m *= static_cast<long>(p);
      ++n;
    }
    DensePoly d;
    const int deg = 1 + static_cast<int>(s.uniform_below(4));
    for (int i = 0; i <= deg; ++i) d.push_back(s.uniform_range(-6, 6));
    // Bias toward repeated roots and heavy p-divisibility.
    if (t % 5 == 0) d = dense::mul(d, dense::mul(DensePoly{-1, 1}, DensePoly{-1, 1}));
    if (t % 7 == 0) d = dense::scale(d, mpz_class(static_cast<unsigned long>(p * p)));
    dense::trim(d);
    if (d.empty()) continue;
    const auto g = IntPolynomial::from_dense(d);
    CHECK(count_roots_mod_pN(g, p, n) == brute_count(g, static_cast<long>(p), n));
  }
}

TEST_CASE("root bound examples") {
  const IntPolynomial one = C(1, 1);
  const auto g = linear_product(one, {1, 1 - 9});
  CHECK(root_count_bound(2, 0, 3, 6) == 54);
  CHECK(root_bound_check(g, {1, -8}, one, 0, 3, 6));
  CHECK(count_roots_mod_pN(g, 3, 6) == brute_count(g, 3, 6));
  CHECK(root_bound_check(linear_product(one, {4}), {4}, one, 0, 5, 3));
  const auto h = IntPolynomial::parse("x^2+1");
  CHECK(count_roots_mod_pN(h, 3, 1) == 0);
  CHECK(root_bound_check(h, {}, h, 0, 3, 4));
  CHECK_THROWS_AS(root_bound_check(g, {1}, one, 0, 3, 6), Error);
  CHECK_THROWS_AS(root_bound_check(linear_product(h, {0}), {0}, h, 0, 5, 4), Error);
}

TEST_CASE("root bound holds on constructed factored polynomials") {
  struct Cofactor {
    const char* text;
    std::uint64_t p;
    int M;
  };
  const std::vector<Cofactor> cofactors = {
      {"1", 2, 0}, {"1", 3, 0}, {"1", 5, 0}, {"x^2+1", 3, 0}, {"x^2+x+1", 2, 0},
      {"x^2-2", 5, 0}, {"2", 2, 1}, {"3", 3, 1}, {"5", 5, 1}, {"x^2+2", 2, 1}};
  SeedStream s(Seed(33).child("bound"));
  for (int t = 0; t < 60; ++t) {
    const auto& c = cofactors[t % cofactors.size()];
    const auto h = IntPolynomial::parse(c.text);
    const std::size_t l = 1 + s.uniform_below(3);
    std::vector<mpz_class> lambdas;
    for (std::size_t i = 0; i < l; ++i) {
      // Clustered roots make the bound nearly tight.
      lambdas.push_back(s.uniform_range(0, 3) + mpz_class(static_cast<unsigned long>(c.p * c.p)) * s.uniform_range(-2, 2));
    }
    const auto g = linear_product(h, lambdas);
    const int n = c.M + 1 + static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(12 - c.M)));
    CHECK(root_bound_check(g, lambdas, h, c.M, c.p, n));
    long pn = 1;
    for (int i = 0; i < n; ++i) pn *= static_cast<long>(c.p);
    if (pn <= 100000) CHECK(count_roots_mod_pN(g, c.p, n) == brute_count(g, static_cast<long>(c.p), n));
  }
}
