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

#include "padic_rigid/free_detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "padic_rigid/errors.hpp"
#include "padic_rigid/lattice.hpp"
#include "padic_rigid/modpn_linear.hpp"
#include "padic_rigid/parallel.hpp"
#include "padic_rigid/random_padic.hpp"

namespace padic_rigid {
namespace {

void check_shared(const std::vector<PadicVector>& vectors, const char* where) {
  for (const auto& v : vectors) {
    if (!v.same_ring(vectors.front())) {
      fail(ErrorCode::kIncompatibleOperands, std::string(where) + ": vectors use different (p, N)");
    }
  }
}

std::size_t common_extent(const std::vector<PadicVector>& vectors) {
  std::size_t w = 0;
  for (const auto& v : vectors) w = std::max(w, v.extent());
  return std::max<std::size_t>(w, 1);
}

// Columns of the returned matrix are the vectors.
ModMatrix column_matrix(const std::vector<PadicVector>& vectors, std::size_t rows) {
  ModMatrix a(rows, std::vector<mpz_class>(vectors.size(), 0));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    for (const auto& [i, value] : vectors[j].entries()) a[i][j] = value;
  }
  return a;
}

std::vector<mpz_class> normalize_witness(std::vector<mpz_class> w, const mpz_class& modulus) {
  const mpz_class half = modulus / 2;
  for (auto& x : w) {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
    if (x > half) x -= modulus;
  }
  const auto first = std::find_if(w.begin(), w.end(), [](const mpz_class& x) { return x != 0; });
  if (first != w.end() && *first < 0) {
    for (auto& x : w) x = -x;
  }
  return w;
}

mpz_class power(std::uint64_t p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

IndependenceVerdict jp_linear_independence(const std::vector<PadicVector>& vectors) {
  IndependenceVerdict out;
  if (vectors.empty()) {
    out.independent = true;
    return out;
  }
  check_shared(vectors, "jp_linear_independence");
  const std::uint64_t p = vectors.front().p();
  const int N = vectors.front().precision();
  const std::size_t rows = common_extent(vectors);
  const std::size_t cols = vectors.size();
  const ModPNSystem system(p, N, column_matrix(vectors, rows), cols);
  out.pivot_valuations = system.pivot_valuations();
  const auto& piv = out.pivot_valuations;
  const bool margin = std::all_of(piv.begin(), piv.end(), [N](int v) { return 2 * v < N; });
  out.independent = system.rank() == cols && margin;
  if (out.independent) return out;

  // The last kernel generator belongs to a missing pivot or to the pivot of
  // largest valuation; both are non-zero mod p^N.
  auto gens = system.kernel_generators();
  if (gens.empty()) fail(ErrorCode::kInternal, "jp_linear_independence: no kernel generator for a dependent set");
  out.witness = normalize_witness(std::move(gens.back()), system.modulus());
  return out;
}

bool contained_mod_pn(const PadicVector& a, const std::vector<PadicVector>& basis) {
  std::vector<PadicVector> all(basis);
  all.push_back(a);
  check_shared(all, "contained_mod_pn");
  if (basis.empty()) return a.is_zero();
  const std::size_t rows = common_extent(all);
  std::vector<mpz_class> rhs(rows, 0);
  for (const auto& [i, value] : a.entries()) rhs[i] = value;
  return solve_mod_pn(a.p(), a.precision(), column_matrix(basis, rows), basis.size(), rhs).has_value();
}

ContainmentReport containment_probability_trial(std::size_t k, int n, double alpha, std::uint64_t trials,
                                                std::uint64_t seed, std::uint64_t p,
                                                std::optional<std::vector<PadicVector>> basis,
                                                unsigned threads) {
  if (!is_prime_u64(p)) fail(ErrorCode::kParameter, "containment trial: p must be prime");
  if (n < 1 || n > 64) fail(ErrorCode::kParameter, "containment trial: n must lie in [1, 64]");
  const Seed root(seed);
  ContainmentReport report;
  report.p = p;
  report.k = k;
  report.n = n;
  report.alpha = alpha;
  report.trials = trials;
  report.seed = seed;
  if (basis) {
    if (basis->size() != k) fail(ErrorCode::kArity, "containment trial: explicit basis must have k vectors");
    for (const auto& b : *basis) {
      if (b.p() != p || b.precision() != n) {
        fail(ErrorCode::kIncompatibleOperands, "containment trial: basis must be given mod p^n");
      }
    }
    report.basis = *basis;
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      report.basis.push_back(sample_nearly_uniform(p, n, alpha, root.path("basis", static_cast<std::int64_t>(i))));
    }
  }
  const double exponent = static_cast<double>(n) * static_cast<double>(k) - std::pow(n, alpha);
  report.bound = std::pow(static_cast<double>(p), exponent);
  const double b = std::min(report.bound, 1.0);
  report.sigma = trials == 0 ? 0.0 : std::sqrt(b * (1.0 - b) / static_cast<double>(trials));
  if (k == 0) {
    const auto w = nearly_uniform_window(n, alpha);
    report.exact_k0 = mpq_class(mpz_class(1), power(p, n * static_cast<int>(w + 1)));
  }

  std::vector<char> hit(trials, 0);
  parallel_for(
      trials,
      [&](std::size_t j) {
        const PadicVector a = sample_nearly_uniform(p, n, alpha, root.path("trial", static_cast<std::int64_t>(j)));
        hit[j] = contained_mod_pn(a, report.basis);
      },
      threads);
  report.hits = static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), 1));
  return report;
}

FreeBasis finite_rank_free_basis(const std::vector<PadicVector>& elements, int K) {
  if (elements.empty()) fail(ErrorCode::kParameter, "finite_rank_free_basis: no elements");
  if (K < 0) fail(ErrorCode::kParameter, "finite_rank_free_basis: K must be non-negative");
  check_shared(elements, "finite_rank_free_basis");
  const std::uint64_t p = elements.front().p();
  const int N = elements.front().precision();
  const std::size_t W = common_extent(elements);

  // Exact integer span of the lifts, then its p-adic elementary divisors.
  IntBasis rows;
  for (const auto& v : elements) rows.push_back(v.dense(W));
  const IntBasis span = hnf_basis(rows, W);
  FreeBasis out;
  out.rank = span.size();
  if (span.empty()) return out;
  const std::size_t r = span.size();
  ModMatrix c(W, std::vector<mpz_class>(r));
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t i = 0; i < W; ++i) c[i][j] = span[j][i];
  }
  const ModPNSystem system(p, N, c, r);
  if (system.rank() < r) {
    fail(ErrorCode::kInconclusive, "finite_rank_free_basis: rank not certified at precision " + std::to_string(N));
  }
  out.smith_valuations = system.pivot_valuations();
  const int D = *std::max_element(out.smith_valuations.begin(), out.smith_valuations.end());
  out.stabilization = D;
  if (D > K) {
    fail(ErrorCode::kInconclusive, "finite_rank_free_basis: purification still growing at cap K=" +
                                       std::to_string(K) + " (needs " + std::to_string(D) + ")");
  }

  // Lambda = {l : C l = 0 mod p^D}; the purification is C Lambda / p^D.
  IntBasis lambda;
  if (D == 0) {
    for (std::size_t j = 0; j < r; ++j) {
      IntVector e(r, 0);
      e[j] = 1;
      lambda.push_back(std::move(e));
    }
  } else {
    const mpz_class pd = power(p, D);
    IntBasis gens = ModPNSystem(p, D, c, r).kernel_generators();
    for (std::size_t j = 0; j < r; ++j) {
      IntVector e(r, 0);
      e[j] = pd;
      gens.push_back(std::move(e));
    }
    lambda = hnf_basis(gens, r);
  }
  if (lambda.size() != r) fail(ErrorCode::kInternal, "finite_rank_free_basis: lattice lost rank");
  const mpz_class pd = power(p, D);
  const auto params = make_padic_params(p, N - D);
  for (const auto& l : lambda) {
    PadicVector y(params);
    for (std::size_t i = 0; i < W; ++i) {
      mpz_class s = 0;
      for (std::size_t j = 0; j < r; ++j) s += c[i][j] * l[j];
      if (!mpz_divisible_p(s.get_mpz_t(), pd.get_mpz_t())) {
        fail(ErrorCode::kInternal, "finite_rank_free_basis: lattice vector not divisible by p^D");
      }
      mpz_divexact(s.get_mpz_t(), s.get_mpz_t(), pd.get_mpz_t());
      y.set(i, s);
    }
    out.basis.push_back(std::move(y));
  }
  return out;
}

FreeCheckTrial free_check_trial(std::uint64_t p, int N, double alpha, std::size_t window, std::size_t m,
                                const Seed& seed) {
  if (m > window) fail(ErrorCode::kParameter, "free_check: more random elements than the window");
  const auto params = make_padic_params(p, N);
  std::vector<PadicVector> vectors;
  for (std::size_t i = 0; i + m < window; ++i) vectors.push_back(PadicVector::basis(params, i));
  for (std::size_t i = 0; i < m; ++i) {
    vectors.push_back(sample_nearly_uniform(p, N, alpha, seed.path("sample", static_cast<std::int64_t>(i)), window));
  }
  FreeCheckTrial out;
  out.independent = jp_linear_independence(vectors).independent;
  if (!out.independent) return out;
  try {
    out.rank = finite_rank_free_basis(vectors, (N - 1) / 2).rank;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInconclusive) throw;
  }
  return out;
}

FreeCheckReport free_check(std::uint64_t p, int N, double alpha, std::size_t window, std::size_t m,
                           std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (!is_prime_u64(p)) fail(ErrorCode::kParameter, "free_check: p must be prime");
  if (N < 2) fail(ErrorCode::kParameter, "free_check: precision must be at least 2");
  FreeCheckReport report;
  report.p = p;
  report.precision = N;
  report.alpha = alpha;
  report.window = window;
  report.m = m;
  report.trials = trials;
  report.seed = seed;
  const Seed root(seed);
  std::vector<FreeCheckTrial> results(trials);
  parallel_for(
      trials,
      [&](std::size_t i) {
        results[i] = free_check_trial(p, N, alpha, window, m, root.path("trial", static_cast<std::int64_t>(i)));
      },
      threads);
  for (const auto& r : results) {
    if (!r.independent) continue;
    ++report.independent;
    if (r.rank && *r.rank == window) {
      ++report.basis_full_rank;
    } else {
      ++report.basis_failed;
    }
  }
  return report;
}

}  // namespace padic_rigid
