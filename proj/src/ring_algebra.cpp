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

#include "padic_rigid/ring_algebra.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "padic_rigid/errors.hpp"

namespace padic_rigid {
namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

RingElement basis_element(std::size_t n, std::size_t i) {
  RingElement e(n);
  e[i] = 1;
  return e;
}

void require_rank(const RingPresentation& ring, std::size_t size, const char* what) {
  if (size != ring.rank) {
    fail(ErrorCode::kArity, std::string(what) + ": element has " + std::to_string(size) +
                                " coordinates, ring rank is " + std::to_string(ring.rank));
  }
}

RingPresentation from_table(std::string name, std::size_t n,
                            const std::vector<std::vector<std::vector<long>>>& table,
                            const std::vector<long>& identity) {
  RingPresentation r;
  r.name = std::move(name);
  r.rank = n;
  r.structure.assign(n, std::vector<std::vector<mpz_class>>(n, std::vector<mpz_class>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) r.structure[i][j][k] = table[i][j][k];
    }
  }
  for (long u : identity) r.identity.emplace_back(u);
  return r;
}

// Pollard rho with Floyd cycling; n odd composite.
mpz_class rho_factor(const mpz_class& n) {
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1;
    auto step = [&](mpz_class& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (d == 1) {
      step(x);
      step(y);
      step(y);
      mpz_class diff = abs(x - y);
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(mpz_class n, std::vector<mpz_class>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    out.push_back(n);
    return;
  }
  const mpz_class d = rho_factor(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<RingViolation> validate(const RingPresentation& ring) {
  std::vector<RingViolation> out;
  const std::size_t n = ring.rank;
  if (n < 1 || n > kMaxRingRank) {
    out.push_back({"shape", {}, "rank must lie in [1, " + std::to_string(kMaxRingRank) + "]"});
    return out;
  }
  bool shape_ok = ring.structure.size() == n && ring.identity.size() == n;
  for (const auto& plane : ring.structure) {
    shape_ok = shape_ok && plane.size() == n;
    for (const auto& row : plane) shape_ok = shape_ok && row.size() == n;
  }
  if (!shape_ok) {
    out.push_back({"shape", {}, "structure must be rank x rank x rank and identity of length rank"});
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const RingElement eij = ring_mul(ring, basis_element(n, i), basis_element(n, j));
      for (std::size_t k = 0; k < n; ++k) {
        const RingElement left = ring_mul(ring, eij, basis_element(n, k));
        const RingElement ejk = ring_mul(ring, basis_element(n, j), basis_element(n, k));
        const RingElement right = ring_mul(ring, basis_element(n, i), ejk);
        if (left != right) {
          out.push_back({"associativity", {i, j, k}, "(e_i e_j) e_k != e_i (e_j e_k) at " + triple(i, j, k)});
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const RingElement e = basis_element(n, i);
    if (ring_mul(ring, ring.identity, e) != e) {
      out.push_back({"left-identity", {i}, "u e_" + std::to_string(i) + " != e_" + std::to_string(i)});
    }
    if (ring_mul(ring, e, ring.identity) != e) {
      out.push_back({"right-identity", {i}, "e_" + std::to_string(i) + " u != e_" + std::to_string(i)});
    }
  }
  return out;
}

void require_valid(const RingPresentation& ring) {
  const auto v = validate(ring);
  if (!v.empty()) {
    fail(ErrorCode::kInput, "invalid ring presentation '" + ring.name + "': " + v.front().detail +
                                " (" + std::to_string(v.size()) + " violations)");
  }
}

RingPresentation integers_ring() { return from_table("integers", 1, {{{1}}}, {1}); }

RingPresentation gaussian_integers_ring() {
  // basis 1, i
  return from_table("gaussian_integers", 2, {{{1, 0}, {0, 1}}, {{0, 1}, {-1, 0}}}, {1, 0});
}

RingPresentation z_cross_z_ring() {
  return from_table("z_cross_z", 2, {{{1, 0}, {0, 0}}, {{0, 0}, {0, 1}}}, {1, 1});
}

RingPresentation upper_triangular_ring() {
  // basis E11, E12, E22
  return from_table("upper_triangular_2x2", 3,
                    {{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}},
                     {{0, 0, 0}, {0, 0, 0}, {0, 1, 0}},
                     {{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}},
                    {1, 0, 1});
}

RingElement ring_add(const RingElement& a, const RingElement& b) {
  if (a.size() != b.size()) fail(ErrorCode::kArity, "ring_add: length mismatch");
  RingElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RingElement ring_sub(const RingElement& a, const RingElement& b) {
  if (a.size() != b.size()) fail(ErrorCode::kArity, "ring_sub: length mismatch");
  RingElement out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RingElement ring_mul(const RingPresentation& ring, const RingElement& a, const RingElement& b) {
  require_rank(ring, a.size(), "ring_mul");
  require_rank(ring, b.size(), "ring_mul");
  const std::size_t n = ring.rank;
  RingElement out(n);
  mpz_class ab;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      ab = a[i] * b[j];
      const auto& c = ring.structure[i][j];
      for (std::size_t k = 0; k < n; ++k) {
        if (c[k] != 0) mpz_addmul(out[k].get_mpz_t(), ab.get_mpz_t(), c[k].get_mpz_t());
      }
    }
  }
  return out;
}

RationalVector ring_mul(const RingPresentation& ring, const RationalVector& a, const RationalVector& b) {
  require_rank(ring, a.size(), "ring_mul");
  require_rank(ring, b.size(), "ring_mul");
  const std::size_t n = ring.rank;
  RationalVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      const mpq_class ab = a[i] * b[j];
      for (std::size_t k = 0; k < n; ++k) {
        if (ring.structure[i][j][k] != 0) out[k] += ab * ring.structure[i][j][k];
      }
    }
  }
  for (auto& x : out) x.canonicalize();
  return out;
}

RingElement ring_scalar(const RingPresentation& ring, const mpz_class& c) {
  RingElement out = ring.identity;
  for (auto& x : out) x *= c;
  return out;
}

RationalVector to_rational(const RingElement& a) {
  RationalVector out;
  out.reserve(a.size());
  for (const auto& x : a) out.emplace_back(x);
  return out;
}

bool is_integral(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x.get_den() == 1; });
}

IntMatrix regular_rep(const RingPresentation& ring, const RingElement& a) {
  require_rank(ring, a.size(), "regular_rep");
  const std::size_t n = ring.rank;
  IntMatrix m(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (ring.structure[i][j][k] != 0) m[k][j] += a[i] * ring.structure[i][j][k];
      }
    }
  }
  return m;
}

RationalVector invert_in_QA(const RingPresentation& ring, const RingElement& x) {
  const IntMatrix m = regular_rep(ring, x);
  const std::size_t n = ring.rank;
  // Solve M y = u over Q by Gauss-Jordan elimination.
  std::vector<std::vector<mpq_class>> aug(n, std::vector<mpq_class>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n] = ring.identity[i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && aug[piv][col] == 0) ++piv;
    if (piv == n) fail(ErrorCode::kNonInvertible, "invert_in_QA: element is not invertible in QA");
    std::swap(aug[piv], aug[col]);
    const mpq_class inv = 1 / aug[col][col];
    for (auto& v : aug[col]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || aug[r][col] == 0) continue;
      const mpq_class f = aug[r][col];
      for (std::size_t c = col; c <= n; ++c) aug[r][c] -= f * aug[col][c];
    }
  }
  RationalVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = aug[i][n];
    y[i].canonicalize();
  }
  const RationalVector u = to_rational(ring.identity);
  if (ring_mul(ring, to_rational(x), y) != u || ring_mul(ring, y, to_rational(x)) != u) {
    fail(ErrorCode::kInternal, "invert_in_QA: inverse is not two-sided");
  }
  return y;
}

mpz_class order_in_QA_mod_A(const RationalVector& v) {
  mpz_class m = 1;
  for (const auto& x : v) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), x.get_den_mpz_t());
  return m;
}

bool DenominatorData::is_exceptional(std::uint64_t p) const {
  for (const auto& c : coordinates) {
    if (c.numerator.empty()) continue;
    if (mpz_divisible_ui_p(c.resultant.get_mpz_t(), static_cast<unsigned long>(p)) != 0) return true;
  }
  return false;
}

DenominatorData denominator_polynomial(const RingPresentation& ring, const RingElement& a,
                                       const RingElement& e) {
  require_rank(ring, a.size(), "denominator_polynomial");
  require_rank(ring, e.size(), "denominator_polynomial");
  if (std::all_of(e.begin(), e.end(), [](const mpz_class& x) { return x == 0; })) {
    fail(ErrorCode::kParameter, "denominator_polynomial: e must be non-zero");
  }
  const std::size_t n = ring.rank;
  const IntMatrix m = regular_rep(ring, a);

  // Faddeev-LeVerrier: chi(c) = det(cI - M) = sum coeff[k] c^k and
  // adj(cI - M) = sum_{k=1}^{n} B_k c^(n-k).
  std::vector<mpz_class> coeff(n + 1);
  coeff[n] = 1;
  std::vector<IntMatrix> b(n + 1, IntMatrix(n, std::vector<mpz_class>(n)));
  IntMatrix prev(n, std::vector<mpz_class>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix bk(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        mpz_class s = 0;
        for (std::size_t t = 0; t < n; ++t) s += m[i][t] * prev[t][j];
        bk[i][j] = s;
      }
      bk[i][i] += coeff[n - k + 1];
    }
    mpz_class trace = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t t = 0; t < n; ++t) trace += m[i][t] * bk[t][i];
    }
    mpz_class c = -trace;
    if (!mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(k))) {
      fail(ErrorCode::kInternal, "denominator_polynomial: non-integral characteristic coefficient");
    }
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k));
    coeff[n - k] = c;
    b[k] = bk;
    prev = std::move(bk);
  }

  DenominatorData out;
  out.characteristic = coeff;
  dense::trim(out.characteristic);
  bool have_f = false;
  std::vector<mpz_class> resultants;
  for (std::size_t i = 0; i < n; ++i) {
    DensePoly num(n);
    for (std::size_t k = 1; k <= n; ++k) {
      mpz_class s = 0;
      for (std::size_t j = 0; j < n; ++j) s += b[k][i][j] * e[j];
      num[n - k] = s;
    }
    dense::trim(num);
    CoordinateFraction cf;
    if (num.empty()) {
      cf.denominator = {1};
      cf.resultant = 0;
      out.coordinates.push_back(std::move(cf));
      continue;
    }
    const DensePoly g = dense::gcd(num, out.characteristic);
    DensePoly rn = dense::exact_div(num, g);
    DensePoly rd = dense::exact_div(out.characteristic, g);
    mpz_class k = dense::content(rn);
    mpz_gcd(k.get_mpz_t(), k.get_mpz_t(), dense::content(rd).get_mpz_t());
    if (rd.back() < 0) k = -k;
    for (auto& x : rn) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
    for (auto& x : rd) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
    cf.numerator = std::move(rn);
    cf.denominator = std::move(rd);
    cf.resultant = abs(dense::resultant(cf.numerator, cf.denominator));
    resultants.push_back(cf.resultant);
    if (!have_f) {
      out.f = cf.denominator;
      out.coordinate = i;
      have_f = true;
    }
    out.coordinates.push_back(std::move(cf));
  }
  if (!have_f) fail(ErrorCode::kInternal, "denominator_polynomial: every coordinate vanishes");
  std::vector<mpz_class> primes;
  for (const auto& r : resultants) {
    if (r == 0) fail(ErrorCode::kInternal, "denominator_polynomial: reduced fraction not coprime");
    for (auto& q : prime_factors(r)) primes.push_back(std::move(q));
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  out.exceptional_primes = std::move(primes);
  return out;
}

std::vector<mpz_class> prime_factors(const mpz_class& n0) {
  if (n0 == 0) fail(ErrorCode::kParameter, "prime_factors: zero");
  mpz_class n = abs(n0);
  std::vector<mpz_class> out;
  for (unsigned long q = 2; q < 1000 && n > 1; ++q) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      out.emplace_back(q);
      while (mpz_divisible_ui_p(n.get_mpz_t(), q)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
    }
  }
  std::vector<mpz_class> rest;
  factor_into(n, rest);
  for (auto& r : rest) out.push_back(std::move(r));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int p_valuation(const mpz_class& n, std::uint64_t p) {
  if (n == 0) fail(ErrorCode::kParameter, "p_valuation: zero");
  mpz_class t = n;
  int v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

}  // namespace padic_rigid
