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

#include "padic_rigid/prime_density.hpp"

#include <string>
#include <utility>

#include "padic_rigid/errors.hpp"
#include "padic_rigid/padic.hpp"
#include "padic_rigid/parallel.hpp"

namespace padic_rigid {
namespace {

constexpr std::uint64_t kMaxScanBound = 100'000'000;

// Finite-difference table of f at x = 0 modulo p: d[k] = Delta^k f(0).
std::vector<std::uint64_t> difference_table(const DensePoly& f, std::uint64_t p) {
  const int deg = dense::degree(f);
  std::vector<std::uint64_t> values(static_cast<std::size_t>(deg) + 1);
  mpz_class v;
  for (int x = 0; x <= deg; ++x) {
    v = dense::eval(f, x);
    mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
    values[x] = v.get_ui();
  }
  // In-place forward differences.
  for (int k = 1; k <= deg; ++k) {
    for (int x = deg; x >= k; --x) values[x] = (values[x] + p - values[x - 1]) % p;
  }
  return values;
}

// Visits f(0), f(1), ..., f(p-1) mod p; stops when visit returns true.
template <typename Visit>
void scan_values(const DensePoly& f, std::uint64_t p, Visit visit) {
  std::vector<std::uint64_t> d = difference_table(f, p);
  const std::size_t deg = d.size() - 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    if (visit(x, d[0])) return;
    for (std::size_t k = 0; k < deg; ++k) {
      d[k] += d[k + 1];
      if (d[k] >= p) d[k] -= p;
    }
  }
}

std::pair<mpz_class, mpz_class> split_sum(const std::vector<std::uint64_t>& primes, std::size_t lo,
                                          std::size_t hi) {
  if (hi - lo == 1) {
    return {mpz_class(1), mpz_class(static_cast<unsigned long>(primes[lo]))};
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  auto [nl, dl] = split_sum(primes, lo, mid);
  auto [nr, dr] = split_sum(primes, mid, hi);
  return {nl * dr + nr * dl, dl * dr};
}

}  // namespace

std::vector<std::uint64_t> primes_up_to(std::uint64_t X) {
  if (X < 2) fail(ErrorCode::kParameter, "primes_up_to: X must be at least 2");
  if (X > kMaxScanBound) fail(ErrorCode::kResource, "primes_up_to: bound above 10^8");
  std::vector<bool> composite(X + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= X; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= X; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::uint64_t> roots_mod_p(const DensePoly& f, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  if (dense::degree(f) < 0) fail(ErrorCode::kParameter, "roots_mod_p: zero polynomial");
  scan_values(f, p, [&](std::uint64_t x, std::uint64_t v) {
    if (v == 0) out.push_back(x);
    return false;
  });
  return out;
}

std::optional<std::uint64_t> smallest_root_mod_p(const DensePoly& f, std::uint64_t p) {
  if (dense::degree(f) < 0) fail(ErrorCode::kParameter, "smallest_root_mod_p: zero polynomial");
  std::optional<std::uint64_t> root;
  scan_values(f, p, [&](std::uint64_t x, std::uint64_t v) {
    if (v == 0) root = x;
    return v == 0;
  });
  return root;
}

bool has_root_mod_p(const IntPolynomial& f, std::uint64_t p) {
  if (f.variables() != 1) fail(ErrorCode::kArity, "has_root_mod_p: polynomial must be univariate");
  const DensePoly d = f.dense();
  if (dense::degree(d) < 1) fail(ErrorCode::kParameter, "has_root_mod_p: f must be non-constant");
  if (!is_prime_u64(p)) fail(ErrorCode::kParameter, "has_root_mod_p: p must be prime");
  return smallest_root_mod_p(d, p).has_value();
}

mpq_class reciprocal_sum(const std::vector<std::uint64_t>& primes) {
  if (primes.empty()) return mpq_class(0);
  auto [num, den] = split_sum(primes, 0, primes.size());
  mpq_class out;
  mpq_set_num(out.get_mpq_t(), num.get_mpz_t());
  mpq_set_den(out.get_mpq_t(), den.get_mpz_t());
  return out;
}

DensityReport density_report(const IntPolynomial& f, std::uint64_t X, unsigned threads) {
  if (f.variables() != 1) fail(ErrorCode::kArity, "density_report: polynomial must be univariate");
  const DensePoly d = f.dense();
  if (dense::degree(d) < 1) fail(ErrorCode::kParameter, "density_report: f must be non-constant");
  const auto primes = primes_up_to(X);

  std::vector<char> root(primes.size(), 0);
  parallel_for(
      primes.size(), [&](std::size_t i) { root[i] = smallest_root_mod_p(d, primes[i]).has_value(); },
      threads);

  DensityReport report;
  report.polynomial = f.to_string();
  report.bound = X;
  std::vector<std::uint64_t> bounds;
  for (std::uint64_t b = 10; b <= X; b *= 10) bounds.push_back(b);
  if (bounds.empty() || bounds.back() != X) bounds.push_back(X);

  std::vector<std::uint64_t> with_root;
  std::size_t idx = 0;
  for (std::uint64_t b : bounds) {
    while (idx < primes.size() && primes[idx] <= b) {
      if (root[idx]) with_root.push_back(primes[idx]);
      ++idx;
    }
    DecadeRow row;
    row.bound = b;
    row.primes_scanned = idx;
    row.primes_with_root = with_root.size();
    row.reciprocal_sum = reciprocal_sum(with_root);
    report.decades.push_back(std::move(row));
  }
  report.primes_scanned = primes.size();
  report.primes_with_root = with_root.size();
  report.reciprocal_sum = report.decades.back().reciprocal_sum;
  report.density = mpq_class(static_cast<unsigned long>(report.primes_with_root),
                             static_cast<unsigned long>(report.primes_scanned));
  report.density.canonicalize();
  return report;
}

}  // namespace padic_rigid
