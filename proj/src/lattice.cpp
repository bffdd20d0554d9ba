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

#include "padic_rigid/lattice.hpp"

#include <cmath>
#include <utility>

#include "padic_rigid/errors.hpp"

namespace padic_rigid {
namespace {

mpz_class dot(const IntVector& a, const IntVector& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) mpz_addmul(s.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  return s;
}

// a -= q * b
void sub_mul(IntVector& a, const IntVector& b, const mpz_class& q) {
  for (std::size_t i = 0; i < a.size(); ++i) mpz_submul(a[i].get_mpz_t(), q.get_mpz_t(), b[i].get_mpz_t());
}

// Nearest integer to num / den (den > 0), ties rounded up.
mpz_class round_div(const mpz_class& num, const mpz_class& den) {
  mpz_class twice = 2 * num + den;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
  return q;
}

}  // namespace

IntBasis lll_reduce(IntBasis b, long delta_num, long delta_den) {
  const std::size_t n = b.size();
  if (n <= 1) return b;
  // 1-indexed bookkeeping following the integral variant of LLL: d[i] is the
  // Gram determinant of the first i vectors, lambda[k][j] = d[j] * mu[k][j].
  std::vector<mpz_class> d(n + 1);
  std::vector<std::vector<mpz_class>> lambda(n + 1, std::vector<mpz_class>(n + 1));
  auto B = [&](std::size_t i) -> IntVector& { return b[i - 1]; };

  d[0] = 1;
  d[1] = dot(B(1), B(1));
  if (d[1] == 0) fail(ErrorCode::kInput, "lll_reduce: zero basis vector");
  std::size_t k = 2, k_max = 1;

  auto redi = [&](std::size_t kk, std::size_t l) {
    mpz_class twice = 2 * lambda[kk][l];
    if (abs(twice) <= d[l]) return;
    const mpz_class q = round_div(lambda[kk][l], d[l]);
    sub_mul(B(kk), B(l), q);
    lambda[kk][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lambda[kk][i] -= q * lambda[l][i];
  };

  auto swapi = [&](std::size_t kk) {
    std::swap(B(kk), B(kk - 1));
    for (std::size_t j = 1; j + 2 <= kk; ++j) std::swap(lambda[kk][j], lambda[kk - 1][j]);
    const mpz_class lam = lambda[kk][kk - 1];
    mpz_class bb = (d[kk - 2] * d[kk] + lam * lam);
    mpz_divexact(bb.get_mpz_t(), bb.get_mpz_t(), d[kk - 1].get_mpz_t());
    for (std::size_t i = kk + 1; i <= k_max; ++i) {
      const mpz_class t = lambda[i][kk];
      mpz_class nk = d[kk] * lambda[i][kk - 1] - lam * t;
      mpz_divexact(nk.get_mpz_t(), nk.get_mpz_t(), d[kk - 1].get_mpz_t());
      lambda[i][kk] = nk;
      mpz_class nk1 = bb * t + lam * lambda[i][kk];
      mpz_divexact(nk1.get_mpz_t(), nk1.get_mpz_t(), d[kk].get_mpz_t());
      lambda[i][kk - 1] = nk1;
    }
    d[kk - 1] = bb;
  };

  while (k <= n) {
    if (k > k_max) {
      k_max = k;
      for (std::size_t j = 1; j <= k; ++j) {
        mpz_class u = dot(B(k), B(j));
        for (std::size_t i = 1; i < j; ++i) {
          u = d[i] * u - lambda[k][i] * lambda[j][i];
          mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), d[i - 1].get_mpz_t());
        }
        if (j < k) {
          lambda[k][j] = u;
        } else {
          d[k] = u;
          if (d[k] == 0) fail(ErrorCode::kInput, "lll_reduce: basis vectors are dependent");
        }
      }
    }
    redi(k, k - 1);
    const mpz_class lhs = delta_den * d[k] * d[k - 2];
    const mpz_class rhs = delta_num * d[k - 1] * d[k - 1] - delta_den * lambda[k][k - 1] * lambda[k][k - 1];
    if (lhs < rhs) {
      swapi(k);
      if (k > 2) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 1;) redi(k, l);
      ++k;
    }
  }
  return b;
}

IntBasis hnf_basis(const IntBasis& generators, std::size_t dim) {
  IntBasis rows;
  for (const auto& g : generators) {
    if (g.size() != dim) fail(ErrorCode::kArity, "hnf_basis: generator has wrong length");
    bool nonzero = false;
    for (const auto& x : g) nonzero = nonzero || x != 0;
    if (nonzero) rows.push_back(g);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        sub_mul(rows[i], rows[r], q);
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < rows.size() && rows[r][c] != 0) {
      if (rows[r][c] < 0) {
        for (auto& x : rows[r]) x = -x;
      }
      for (std::size_t i = 0; i < r; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        sub_mul(rows[i], rows[r], q);
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

EnumerationStats enumerate_short_vectors(
    const IntBasis& basis, const mpz_class& radius_squared, std::uint64_t node_budget,
    const std::function<bool(const IntVector&, const std::vector<long>&)>& visit) {
  EnumerationStats stats;
  const std::size_t n = basis.size();
  if (n == 0) return stats;
  const std::size_t m = basis[0].size();

  // Floating Gram-Schmidt of the (already reduced) basis.
  std::vector<std::vector<long double>> bf(n, std::vector<long double>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) bf[i][j] = static_cast<long double>(basis[i][j].get_d());
  }
  std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0.0L));
  std::vector<long double> bstar(n);
  std::vector<std::vector<long double>> star = bf;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      long double num = 0;
      for (std::size_t t = 0; t < m; ++t) num += bf[i][t] * star[j][t];
      mu[i][j] = num / bstar[j];
      for (std::size_t t = 0; t < m; ++t) star[i][t] -= mu[i][j] * star[j][t];
    }
    long double norm = 0;
    for (std::size_t t = 0; t < m; ++t) norm += star[i][t] * star[i][t];
    bstar[i] = norm;
    if (!(norm > 0)) fail(ErrorCode::kInput, "enumerate_short_vectors: degenerate basis");
  }

  const long double radius = static_cast<long double>(radius_squared.get_d()) * (1.0L + 1e-9L) + 1e-9L;
  std::vector<long> x(n, 0);
  bool stop = false;
  IntVector v(m);

  // Levels are processed from n-1 down to 0; partial[i] is the squared
  // length contributed by levels > i.
  std::function<void(std::size_t, long double)> recurse = [&](std::size_t level, long double used) {
    if (stop) return;
    long double center = 0;
    for (std::size_t j = level + 1; j < n; ++j) center -= static_cast<long double>(x[j]) * mu[j][level];
    const long double room = radius - used;
    if (room < 0) return;
    const long double half = std::sqrt(room / bstar[level]);
    const long lo = static_cast<long>(std::ceil(center - half));
    const long hi = static_cast<long>(std::floor(center + half));
    if (lo > hi) return;
    // Zig-zag from the nearest integer outward.
    long c0 = static_cast<long>(std::llround(center));
    if (c0 < lo) c0 = lo;
    if (c0 > hi) c0 = hi;
    for (long step = 0;; ++step) {
      long candidates[2];
      int count = 0;
      if (step == 0) {
        candidates[count++] = c0;
      } else {
        if (c0 + step <= hi) candidates[count++] = c0 + step;
        if (c0 - step >= lo) candidates[count++] = c0 - step;
        if (count == 0) break;
      }
      for (int t = 0; t < count; ++t) {
        if (stop) return;
        if (++stats.nodes > node_budget) {
          stats.exhausted_budget = true;
          stop = true;
          return;
        }
        x[level] = candidates[t];
        const long double diff = static_cast<long double>(x[level]) - center;
        const long double next = used + diff * diff * bstar[level];
        if (next > radius) continue;
        if (level > 0) {
          recurse(level - 1, next);
        } else {
          bool nonzero = false;
          for (long xi : x) nonzero = nonzero || xi != 0;
          if (!nonzero) continue;
          for (std::size_t t2 = 0; t2 < m; ++t2) v[t2] = 0;
          for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0) continue;
            const mpz_class xi(x[i]);
            for (std::size_t t2 = 0; t2 < m; ++t2) {
              mpz_addmul(v[t2].get_mpz_t(), xi.get_mpz_t(), basis[i][t2].get_mpz_t());
            }
          }
          if (visit(v, x)) stop = true;
        }
      }
      if (step > 0 && c0 + step > hi && c0 - step < lo) break;
    }
    x[level] = 0;
  };
  recurse(n - 1, 0.0L);
  return stats;
}

}  // namespace padic_rigid
