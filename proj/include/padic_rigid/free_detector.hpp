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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "padic_rigid/padic.hpp"
#include "padic_rigid/seed.hpp"

namespace padic_rigid {

struct IndependenceVerdict {
  bool independent = false;
  /// Residues mod p^N in (-p^N/2, p^N/2], first non-zero entry positive.
  std::optional<std::vector<mpz_class>> witness;
  std::vector<int> pivot_valuations;
};

/// Column reduction mod p^N with minimal-valuation pivots. Independent iff
/// the rank is full and every pivot valuation is below N/2.
IndependenceVerdict jp_linear_independence(const std::vector<PadicVector>& vectors);

struct ContainmentReport {
  std::uint64_t p = 2;
  std::size_t k = 0;
  int n = 1;
  double alpha = 1.5;
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
  std::vector<PadicVector> basis;  // b_1 .. b_k mod p^n
  double bound = 0.0;              // p^(nk - n^alpha)
  double sigma = 0.0;              // sqrt(b (1 - b) / trials), b = min(bound, 1)
  std::optional<mpq_class> exact_k0;  // p^(-n (w(n) + 1)) when k = 0

  double frequency() const { return trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials); }
  bool within_bound() const { return frequency() <= bound + 3.0 * sigma; }
};

/// a in span_Z(b_1, .., b_k) + p^n B, decided by a linear solve mod p^n.
bool contained_mod_pn(const PadicVector& a, const std::vector<PadicVector>& basis);

/// b_i come from the nearly-uniform law at seed paths ("basis", i) unless
/// given explicitly; trial j draws a from ("trial", j).
ContainmentReport containment_probability_trial(std::size_t k, int n, double alpha, std::uint64_t trials,
                                                std::uint64_t seed, std::uint64_t p = 2,
                                                std::optional<std::vector<PadicVector>> basis = std::nullopt,
                                                unsigned threads = 0);

struct FreeBasis {
  std::vector<PadicVector> basis;  // at precision N - D
  std::size_t rank = 0;
  int stabilization = 0;           // D, the largest elementary-divisor valuation
  std::vector<int> smith_valuations;
};

/// Basis of the p-purification {y : p^k y in span_Z(elements), k <= K} of the
/// integer span of the canonical lifts. Throws kInconclusive when K < D or the
/// rank is not certified at precision N.
FreeBasis finite_rank_free_basis(const std::vector<PadicVector>& elements, int K);

struct FreeCheckTrial {
  bool independent = false;
  std::optional<std::size_t> rank;  // set when the free basis succeeded
};

/// Vectors e_0 .. e_{W-m-1} plus m nearly-uniform samples with W coordinates
/// at precision N; independence test, then the free basis with K = (N-1)/2.
FreeCheckTrial free_check_trial(std::uint64_t p, int N, double alpha, std::size_t window, std::size_t m,
                                const Seed& seed);

struct FreeCheckReport {
  std::uint64_t p = 2;
  int precision = 32;
  double alpha = 1.5;
  std::size_t window = 8;
  std::size_t m = 3;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t independent = 0;
  std::uint64_t basis_full_rank = 0;  // independent trials whose basis has rank = window
  std::uint64_t basis_failed = 0;     // independent trials without a full-rank basis
};

FreeCheckReport free_check(std::uint64_t p, int N, double alpha, std::size_t window, std::size_t m,
                           std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

}  // namespace padic_rigid
