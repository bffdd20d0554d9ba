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

#include "padic_rigid/independence.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "padic_rigid/errors.hpp"
#include "padic_rigid/lattice.hpp"

namespace padic_rigid {
namespace {

mpz_class pow_ui(std::uint64_t p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

void append_degree(std::size_t k, int remaining, std::size_t pos, IntPolynomial::Exponents& cur,
                   std::vector<IntPolynomial::Exponents>& out) {
  if (pos + 1 == k) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    append_degree(k, remaining - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

// Coefficients of g(r + y) as a polynomial in y.
DensePoly taylor_shift(DensePoly g, const mpz_class& r) {
  const int n = static_cast<int>(g.size());
  for (int i = 0; i < n; ++i) {
    for (int j = n - 2; j >= i; --j) g[j] += r * g[j + 1];
  }
  return g;
}

bool is_zero_mod(const mpz_class& x, const mpz_class& m) {
  return mpz_divisible_p(x.get_mpz_t(), m.get_mpz_t()) != 0;
}

IntPolynomial relation_polynomial(const std::vector<IntPolynomial::Exponents>& monos,
                                  const IntVector& c, std::size_t k) {
  IntPolynomial f(k);
  for (std::size_t j = 0; j < monos.size(); ++j) {
    if (c[j] != 0) f.add_term(monos[j], c[j]);
  }
  return f;
}

}  // namespace

PadicApprox evaluate(const IntPolynomial& f, const std::vector<PadicApprox>& xs) {
  if (xs.size() != f.variables()) {
    fail(ErrorCode::kArity, "evaluate: polynomial has " + std::to_string(f.variables()) +
                                " variables but " + std::to_string(xs.size()) + " values given");
  }
  if (xs.empty()) fail(ErrorCode::kArity, "evaluate: no values");
  std::vector<mpz_class> values;
  values.reserve(xs.size());
  for (const auto& x : xs) {
    if (!x.same_ring(xs.front())) fail(ErrorCode::kIncompatibleOperands, "evaluate: mixed (p, N)");
    values.push_back(x.residue());
  }
  return PadicApprox::from_integer(xs.front().params(),
                                   evaluate_mod(f, values, xs.front().modulus()));
}

std::vector<IntPolynomial::Exponents> monomials_up_to(std::size_t k, int d) {
  if (k == 0) fail(ErrorCode::kParameter, "monomials_up_to: no variables");
  if (d < 0) fail(ErrorCode::kParameter, "monomials_up_to: negative degree");
  std::vector<IntPolynomial::Exponents> out;
  IntPolynomial::Exponents cur(k, 0);
  for (int t = 0; t <= d; ++t) append_degree(k, t, 0, cur, out);
  return out;
}

RelationReport find_relation(const std::vector<PadicApprox>& xs, int d, long H,
                             const RelationLimits& limits) {
  if (xs.empty()) fail(ErrorCode::kArity, "find_relation: no values");
  if (d < 0 || H < 1) fail(ErrorCode::kParameter, "find_relation: need d >= 0 and H >= 1");
  for (const auto& x : xs) {
    if (!x.same_ring(xs.front())) {
      fail(ErrorCode::kIncompatibleOperands, "find_relation: mixed (p, N)");
    }
  }
  const std::uint64_t p = xs.front().p();
  const int N = xs.front().precision();
  const mpz_class& modulus = xs.front().modulus();
  const std::size_t k = xs.size();
  const auto monos = monomials_up_to(k, d);
  const std::size_t m = monos.size();
  if (m > limits.max_monomials) {
    fail(ErrorCode::kResource, "find_relation: " + std::to_string(m) +
                                   " monomials exceed the limit of " +
                                   std::to_string(limits.max_monomials));
  }

  RelationReport report;
  report.degree_bound = d;
  report.height_bound = H;
  report.precision = N;
  report.p = p;
  report.monomials = m;

  std::vector<mpz_class> residues;
  for (const auto& x : xs) residues.push_back(x.residue());
  std::vector<mpz_class> v(m);
  for (std::size_t j = 0; j < m; ++j) {
    IntPolynomial mono(k);
    mono.add_term(monos[j], 1);
    v[j] = evaluate_mod(mono, residues, modulus);
  }

  // Relation lattice {c : sum c_j v_j = 0 mod p^N}. Pivot on a value of
  // least valuation; every other coordinate is free and fixes the pivot
  // coordinate modulo p^(N - v).
  std::size_t j0 = 0;
  int v0 = N;
  for (std::size_t j = 0; j < m; ++j) {
    const int vj = valuation_of(v[j], p, N);
    if (vj < v0) {
      v0 = vj;
      j0 = j;
    }
  }
  const int reduced_precision = N - v0;
  const mpz_class reduced_modulus = pow_ui(p, reduced_precision);
  const mpz_class scale = pow_ui(p, v0);
  mpz_class w0_inv = 0;
  if (reduced_precision > 0) {
    mpz_class w0 = v[j0] / scale;
    mpz_invert(w0_inv.get_mpz_t(), w0.get_mpz_t(), reduced_modulus.get_mpz_t());
  }
  IntBasis basis;
  for (std::size_t j = 0; j < m; ++j) {
    IntVector row(m);
    if (j == j0) {
      row[j0] = reduced_modulus;
    } else {
      row[j] = 1;
      if (reduced_precision > 0) {
        mpz_class t = (v[j] / scale) * w0_inv;
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), reduced_modulus.get_mpz_t());
        if (2 * t > reduced_modulus) t -= reduced_modulus;
        row[j0] = -t;
      }
    }
    basis.push_back(std::move(row));
  }
  basis = lll_reduce(std::move(basis));

  // Every box vector has squared norm <= m H^2. Radii grow geometrically so
  // that the first non-empty shell yields the minimal-norm witness.
  const mpz_class full_radius = mpz_class(static_cast<unsigned long>(m)) * H * H;
  mpz_class radius = 1;
  std::optional<IntVector> best;
  mpz_class best_norm;
  auto normalize = [](IntVector c) {
    for (const auto& x : c) {
      if (x == 0) continue;
      if (x < 0) {
        for (auto& y : c) y = -y;
      }
      break;
    }
    return c;
  };
  for (;;) {
    if (radius > full_radius) radius = full_radius;
    std::uint64_t remaining = limits.node_budget > report.nodes ? limits.node_budget - report.nodes : 0;
    const auto stats = enumerate_short_vectors(
        basis, radius, remaining, [&](const IntVector& c, const std::vector<long>&) {
          mpz_class norm = 0;
          for (const auto& x : c) {
            if (abs(x) > H) return false;
            norm += x * x;
          }
          if (norm > radius) return false;
          IntVector cand = normalize(c);
          if (!best || norm < best_norm || (norm == best_norm && cand < *best)) {
            best = std::move(cand);
            best_norm = norm;
          }
          return false;
        });
    report.nodes += stats.nodes;
    if (stats.exhausted_budget) {
      fail(ErrorCode::kResource, "find_relation: enumeration node budget of " +
                                     std::to_string(limits.node_budget) + " exhausted");
    }
    if (best || radius == full_radius) break;
    radius *= 4;
  }

  if (best) {
    IntPolynomial f = relation_polynomial(monos, *best, k);
    if (evaluate(f, xs).residue() != 0) {
      fail(ErrorCode::kInternal, "find_relation: witness does not vanish");
    }
    report.found = true;
    report.witness = std::move(f);
  }
  return report;
}

mpz_class count_roots_mod_pN(const IntPolynomial& g, std::uint64_t p, int N) {
  if (g.is_zero()) fail(ErrorCode::kInput, "count_roots_mod_pN: zero polynomial");
  if (g.variables() != 1) fail(ErrorCode::kArity, "count_roots_mod_pN: polynomial must be univariate");
  if (N < 1) fail(ErrorCode::kParameter, "count_roots_mod_pN: N must be positive");
  if (!is_prime_u64(p)) fail(ErrorCode::kParameter, "count_roots_mod_pN: p must be prime");
  const mpz_class modulus = pow_ui(p, N);
  DensePoly f = g.dense();
  for (auto& c : f) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());

  mpz_class total = 0;
  // Residue classes r mod p^k all of whose members might still be roots.
  std::vector<std::pair<mpz_class, int>> stack{{mpz_class(0), 0}};
  while (!stack.empty()) {
    auto [r, level] = std::move(stack.back());
    stack.pop_back();
    const DensePoly shifted = taylor_shift(f, r);
    // Whole class is a root class when every term c_i (p^k t)^i vanishes.
    bool whole = true;
    for (std::size_t i = 0; i < shifted.size() && whole; ++i) {
      const long need = static_cast<long>(N) - static_cast<long>(i) * level;
      if (need <= 0) continue;
      whole = is_zero_mod(shifted[i], pow_ui(p, static_cast<int>(need)));
    }
    if (whole) {
      total += pow_ui(p, N - level);
      continue;
    }
    if (level == N) continue;
    const mpz_class step = pow_ui(p, level);
    const mpz_class next_mod = step * p;
    for (std::uint64_t t = 0; t < p; ++t) {
      const mpz_class y = step * static_cast<unsigned long>(t);
      mpz_class acc = 0;
      for (std::size_t i = shifted.size(); i-- > 0;) {
        acc = acc * y + shifted[i];
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), next_mod.get_mpz_t());
      }
      if (acc == 0) stack.emplace_back(r + y, level + 1);
    }
  }
  return total;
}

mpz_class root_count_bound(std::size_t l, int M, std::uint64_t p, int N) {
  if (l == 0) fail(ErrorCode::kParameter, "root_count_bound: l must be positive");
  const int exponent = N - (N - M) / static_cast<int>(l);
  return mpz_class(static_cast<unsigned long>(l)) * pow_ui(p, exponent);
}

bool root_bound_check(const IntPolynomial& g, const std::vector<mpz_class>& lambdas,
                      const IntPolynomial& h, int M, std::uint64_t p, int N) {
  if (M < 0 || N <= M) fail(ErrorCode::kParameter, "root_bound_check: need N > M >= 0");
  if (g.variables() != 1 || h.variables() != 1) {
    fail(ErrorCode::kArity, "root_bound_check: polynomials must be univariate");
  }
  DensePoly product = h.dense();
  for (const auto& lambda : lambdas) product = dense::mul(product, DensePoly{-lambda, 1});
  dense::trim(product);
  DensePoly gd = g.dense();
  dense::trim(gd);
  if (product != gd) fail(ErrorCode::kInput, "root_bound_check: g differs from h * prod (x - lambda_i)");
  if (count_roots_mod_pN(h, p, M + 1) != 0) {
    fail(ErrorCode::kInput, "root_bound_check: h has a root mod p^(M+1)");
  }
  if (lambdas.empty()) return true;
  return count_roots_mod_pN(g, p, N) <= root_count_bound(lambdas.size(), M, p, N);
}

}  // namespace padic_rigid
