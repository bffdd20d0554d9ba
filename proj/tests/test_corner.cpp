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

#include <set>
#include <vector>

#include "doctest.h"
#include "padic_rigid/corner.hpp"
#include "padic_rigid/errors.hpp"

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

const std::set<std::size_t> kAll = {0, 1, 2};

CornerModel gaussian_model(std::uint64_t seed) { return build_corner_model(gaussian_integers_ring(), {}, seed); }

ModelVector reduce(const ModelVector& x, int n) {
  ModelVector out;
  for (const auto& v : x) out.push_back(reduce_precision(v, n));
  return out;
}

ModelVector random_model_vector(const CornerModel& m, SeedStream& s) {
  ModelVector out;
  const auto params = m.padic();
  for (std::size_t t = 0; t < m.params.realizations; ++t) {
    PadicVector v(params);
    for (std::size_t i = 0; i < m.abelian_rank(); ++i) v.set(i, s.uniform_digits(m.params.p, m.params.precision));
    out.push_back(std::move(v));
  }
  return out;
}

RingElement random_ring_element(std::size_t n, long H, SeedStream& s) {
  RingElement r(n);
  for (auto& x : r) x = static_cast<long>(s.uniform_range(-H, H));
  return r;
}

// Element z + sum r_g a_g over generators with labels in A.
ModelVector random_member(const CornerModel& m, const std::set<std::size_t>& A, SeedStream& s) {
  const auto params = m.padic();
  PadicVector z(params);
  for (std::size_t i = 0; i < m.abelian_rank(); ++i) z.set(i, static_cast<long>(s.uniform_range(-9, 9)));
  ModelVector x = constant_vector(m, z);
  for (std::size_t g = 0; g < m.generators.size(); ++g) {
    if (!A.count(m.generators[g].label)) continue;
    x = model_add(x, ring_act(m, random_ring_element(m.ring.rank, 5, s), m.values[g]));
  }
  return x;
}

// Exhaustive membership over (k, z, r) for a model with R = Z, window 1 and
// a single generator: p^k x_t = z + r a_t (mod p^N) for every t.
bool brute_member(const CornerModel& m, const ModelVector& x, bool with_generator, int cap) {
  const mpz_class mod = m.padic()->modulus;
  const long M = mod.get_si();
  for (int k = 0; k <= cap; ++k) {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(m.params.p), static_cast<unsigned long>(k));
    for (long z = 0; z < M; ++z) {
      for (long r = 0; r < (with_generator ? M : 1); ++r) {
        bool ok = true;
        for (std::size_t t = 0; t < x.size() && ok; ++t) {
          mpz_class lhs = pk * x[t].at(0) - z - r * m.values[0][t].at(0);
          mpz_fdiv_r(lhs.get_mpz_t(), lhs.get_mpz_t(), mod.get_mpz_t());
          ok = lhs == 0;
        }
        if (ok) return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("build_generator examples") {
  const auto z = integers_ring();
  SupportedElement se;
  se.support = {0};
  se.coefficients.emplace(0, PadicApprox::from_integer(5, 4, 1));
  const auto v = build_generator(z, se, 3, 4);
  CHECK(v == PadicVector::basis(make_padic_params(5, 4), 0));

  SupportedElement two;
  two.support = {0, 1};
  two.coefficients.emplace(0, PadicApprox::from_integer(7, 2, 3));
  two.coefficients.emplace(1, PadicApprox::from_integer(7, 2, 5));
  const auto w = build_generator(z, two, 2, 2);
  CHECK(w.entries() == std::map<std::size_t, mpz_class>{{0, 3}, {1, 5}});
  CHECK(code_of([&] { build_generator(z, two, 1, 2); }) == ErrorCode::kOutOfRange);

  SupportedElement empty;
  CHECK(code_of([&] { build_generator(z, empty, 2, 2); }) == ErrorCode::kInput);

  // Over Z[i] the entry sits on the identity coordinate of its block.
  const auto g = build_generator(gaussian_integers_ring(), two, 2, 2);
  CHECK(g.entries() == std::map<std::size_t, mpz_class>{{0, 3}, {2, 5}});
}

TEST_CASE("tree depth for a precision") {
  CHECK(corner_tree_depth(1) == 0);
  CHECK(corner_tree_depth(8) == 3);
  CHECK(corner_tree_depth(15) == 3);
  CHECK(corner_tree_depth(16) == 4);
}

TEST_CASE("model generators follow their trees") {
  const auto m = gaussian_model(4);
  CHECK(m.tree_depth == 4);
  CHECK(m.generators.size() == 6);
  const Seed root(4);
  for (std::size_t g = 0; g < m.generators.size(); ++g) {
    const auto& gen = m.generators[g];
    CHECK(gen.support == m.generators[gen.n * 3].support);
    CHECK(*gen.support.rbegin() < m.params.window);
    for (std::size_t t = 0; t < m.params.realizations; ++t) {
      SupportedElement se;
      se.support = gen.support;
      for (auto b : gen.support) {
        const auto tree = sample_tree(5, 4, root.path("tree", static_cast<std::int64_t>(gen.n), static_cast<std::int64_t>(b),
                                                     static_cast<std::int64_t>(t)));
        const auto xi = reduce_precision(xi_of_branch(tree, BitSequence{4, gen.label}), 16);
        CHECK(gen.xi[t].at(b) == xi);
        se.coefficients.emplace(b, xi);
      }
      CHECK(m.values[g][t] == build_generator(m.ring, se, m.params.window, 16));
    }
  }
}

TEST_CASE("membership examples") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = gaussian_model(seed);
    const auto e0 = PadicVector::basis(m.padic(), 0);
    const auto r = membership(e0, m, {});
    CHECK(r.verdict == MembershipVerdict::kInAtPrecision);
    CHECK(r.k == 0);
    for (std::size_t g = 0; g < m.generators.size(); ++g) {
      const std::size_t label = m.generators[g].label;
      CHECK(membership(m.values[g], m, {label}).verdict == MembershipVerdict::kInAtPrecision);
      std::set<std::size_t> others;
      for (std::size_t a = 0; a < 3; ++a) {
        if (a != label) others.insert(a);
      }
      CHECK(membership(m.values[g], m, others).verdict == MembershipVerdict::kNotIn);
    }
  }
}

TEST_CASE("membership errors") {
  const auto m = gaussian_model(1);
  const auto wrong = PadicVector::basis(make_padic_params(5, 8), 0);
  CHECK(code_of([&] { membership(wrong, m, {0}); }) == ErrorCode::kIncompatibleOperands);
  CHECK(code_of([&] { membership(PadicVector::basis(m.padic(), 0), m, {7}); }) == ErrorCode::kOutOfRange);
  CHECK(code_of([&] { membership(PadicVector::basis(m.padic(), 99), m, {0}); }) == ErrorCode::kOutOfRange);
}

TEST_CASE("membership agrees with exhaustive search on a tiny model") {
  CornerParams cp;
  cp.p = 2;
  cp.precision = 3;
  cp.denominator_cap = 2;
  cp.window = 1;
  cp.labels = 1;
  cp.per_label = 1;
  cp.realizations = 3;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto m = build_corner_model(integers_ring(), cp, seed);
    REQUIRE(m.generators.size() == 1);
    SeedStream s(Seed(seed).child("x"));
    for (int trial = 0; trial < 40; ++trial) {
      const auto x = random_model_vector(m, s);
      for (int cap = 0; cap <= 2; ++cap) {
        const bool with = membership(x, m, {0}, cap).verdict == MembershipVerdict::kInAtPrecision;
        const bool without = membership(x, m, {}, cap).verdict == MembershipVerdict::kInAtPrecision;
        CHECK(with == brute_member(m, x, true, cap));
        CHECK(without == brute_member(m, x, false, cap));
      }
    }
  }
}

TEST_CASE("membership is monotone in K") {
  const auto m = gaussian_model(2);
  SeedStream s(Seed(71));
  for (int trial = 0; trial < 30; ++trial) {
    // Scaled members p^j y / p^j: test p^j-divisible combinations.
    auto x = random_model_vector(m, s);
    if (trial % 2 == 0) x = random_member(m, {0, 1}, s);
    bool previous = false;
    for (int cap = 0; cap <= 10; ++cap) {
      const bool in = membership(x, m, {0, 1}, cap).verdict == MembershipVerdict::kInAtPrecision;
      if (previous) CHECK(in);
      previous = in;
    }
  }
}

TEST_CASE("refutations survive refinement") {
  CornerParams coarse;
  coarse.precision = 8;
  coarse.denominator_cap = 4;
  CornerParams fine = coarse;
  fine.precision = 16;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto mc = build_corner_model(gaussian_integers_ring(), coarse, seed);
    const auto mf = build_corner_model(gaussian_integers_ring(), fine, seed);
    for (std::size_t g = 0; g < mf.values.size(); ++g) CHECK(reduce(mf.values[g], 8) == mc.values[g]);
    SeedStream s(Seed(seed).child("refine"));
    for (int trial = 0; trial < 10; ++trial) {
      const auto x = trial % 2 ? random_model_vector(mf, s) : mf.values[s.uniform_below(mf.values.size())];
      for (const auto& A : {std::set<std::size_t>{0}, std::set<std::size_t>{1, 2}}) {
        const bool in_coarse = membership(reduce(x, 8), mc, A).verdict == MembershipVerdict::kInAtPrecision;
        const bool in_fine = membership(x, mf, A).verdict == MembershipVerdict::kInAtPrecision;
        if (!in_coarse) CHECK_FALSE(in_fine);
      }
    }
  }
}

TEST_CASE("accepted set is closed under addition and the ring action") {
  const auto m = gaussian_model(5);
  SeedStream s(Seed(72));
  const std::set<std::size_t> A = {0, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_member(m, A, s);
    const auto y = random_member(m, A, s);
    CHECK(membership(x, m, A).verdict == MembershipVerdict::kInAtPrecision);
    CHECK(membership(model_add(x, y), m, A).verdict == MembershipVerdict::kInAtPrecision);
    const auto r = random_ring_element(2, 7, s);
    CHECK(membership(ring_act(m, r, x), m, A).verdict == MembershipVerdict::kInAtPrecision);
    // Adding a generator outside A leaves the set.
    CHECK(membership(model_add(x, m.values[1]), m, A).verdict == MembershipVerdict::kNotIn);
  }
}

TEST_CASE("multiplication probes") {
  const auto m = gaussian_model(6);
  CHECK(mult_by_r_probe(E({1, 0}), m, kAll));
  CHECK(mult_by_r_probe(E({0, 0}), m, {1}));
  SeedStream s(Seed(73));
  for (int i = 0; i < 20; ++i) {
    const auto r = random_ring_element(2, 20, s);
    const auto t = random_ring_element(2, 20, s);
    const bool pr = mult_by_r_probe(r, m, {0, 1});
    const bool pt = mult_by_r_probe(t, m, {0, 1});
    CHECK(pr);
    if (pr && pt) CHECK(mult_by_r_probe(ring_add(r, t), m, {0, 1}));
  }
}

TEST_CASE("maps on model vectors") {
  const auto m = gaussian_model(7);
  SeedStream s(Seed(74));
  const auto x = random_model_vector(m, s);
  CHECK(apply_map(m, identity_map(m), x) == x);
  const auto r = E({3, -2});
  CHECK(apply_map(m, multiplication_map(m, r), x) == ring_act(m, r, x));
}

TEST_CASE("rigidity verdicts") {
  const auto consistent_pairs = label_pairs(3, true);
  const auto violating_pairs = label_pairs(3, false);
  CHECK(consistent_pairs.size() == 19);
  CHECK(violating_pairs.size() == 37);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto m = gaussian_model(seed);
    for (std::size_t i = seed; i < consistent_pairs.size(); i += 5) {
      const auto& [A, D] = consistent_pairs[i];
      CHECK(rigidity_check(m, multiplication_map(m, E({2, 1})), A, D).verdict == RigidityVerdict::kConsistent);
      CHECK(rigidity_check(m, identity_map(m), A, D).verdict == RigidityVerdict::kConsistent);
      CHECK(rigidity_trial(m, A, D, Seed(seed).child("map")).verdict == RigidityVerdict::kViolation);
    }
    for (std::size_t i = seed; i < violating_pairs.size(); i += 5) {
      const auto& [A, D] = violating_pairs[i];
      const auto r = rigidity_check(m, identity_map(m), A, D);
      CHECK(r.verdict == RigidityVerdict::kViolation);
      REQUIRE(r.failing_generator);
      CHECK_FALSE(D.count(m.generators[*r.failing_generator].label));
    }
  }
}

TEST_CASE("random maps avoid the excluded multiplications") {
  CornerParams cp;
  cp.p = 2;
  cp.precision = 1;
  cp.denominator_cap = 0;
  cp.window = 1;
  cp.labels = 1;
  cp.per_label = 1;
  cp.realizations = 1;
  const auto m = build_corner_model(integers_ring(), cp, 0);
  // Over Z/2 with window 1 the only maps are 0 and 1; excluding 0 forces 1.
  for (int i = 0; i < 10; ++i) {
    const auto phi = random_additive_map(m, Seed(i), {E({0})});
    CHECK(phi.images[0].at(0) == 1);
  }
}

TEST_CASE("model over Z and parameter errors") {
  const auto m = build_corner_model(integers_ring(), {}, 3);
  CHECK(m.abelian_rank() == 4);
  CHECK(rigidity_check(m, identity_map(m), {0}, {1}).verdict == RigidityVerdict::kViolation);
  CHECK(mult_by_r_probe(E({5}), m, {0}));
  CornerParams bad;
  bad.labels = 0;
  CHECK(code_of([&] { build_corner_model(integers_ring(), bad, 0); }) == ErrorCode::kParameter);
  CornerParams crowded;
  crowded.precision = 3;
  crowded.labels = 3;
  CHECK(code_of([&] { build_corner_model(integers_ring(), crowded, 0); }) == ErrorCode::kParameter);
}
