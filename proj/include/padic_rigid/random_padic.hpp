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
#include <map>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "padic_rigid/padic.hpp"
#include "padic_rigid/seed.hpp"

namespace padic_rigid {

/// Finite 0-1 sequence; element k is bit k of `bits`.
struct BitSequence {
  int length = 0;
  std::uint64_t bits = 0;

  bool at(int k) const { return ((bits >> k) & 1U) != 0; }
  /// Initial segment of the first n elements.
  BitSequence prefix(int n) const;

  friend bool operator==(const BitSequence&, const BitSequence&) = default;
};

/// Random digits a_s of the branching construction: one digit per 0-1
/// sequence s of length n <= depth, with a_s uniform in [0, p^(2^n)).
/// Level n occupies p-adic digit positions [2^n - 1, 2^(n+1) - 1), so a
/// branch value at depth D is known to precision 2^(D+1) - 1.
class TreeCoefficients {
 public:
  TreeCoefficients(std::uint64_t p, int depth, std::vector<std::vector<mpz_class>> levels);

  std::uint64_t p() const noexcept { return p_; }
  int depth() const noexcept { return depth_; }
  const mpz_class& digit(const BitSequence& s) const;
  /// levels()[n][bits] is a_s for the sequence of length n encoded by bits.
  const std::vector<std::vector<mpz_class>>& levels() const noexcept { return levels_; }
  std::size_t digit_count() const noexcept;

 private:
  std::uint64_t p_;
  int depth_;
  std::vector<std::vector<mpz_class>> levels_;
};

/// Precision 2^(n+1) - 1 of the level-n partial sum.
int tree_precision(int level);

/// Exclusive upper bound p^(2^n) on a level-n digit.
mpz_class tree_digit_bound(std::uint64_t p, int level);

/// Residue uniform on [0, p^N). Digits are drawn least significant first,
/// so a longer draw from the same seed extends a shorter one.
PadicApprox sample_uniform(std::uint64_t p, int precision, const Seed& seed);

TreeCoefficients sample_tree(std::uint64_t p, int depth, const Seed& seed);

/// b_s = sum_{j <= n} p^(2^j - 1) a_{s|j} at precision 2^(n+1) - 1.
PadicApprox partial_sum_b(const TreeCoefficients& tree, const BitSequence& s);

/// Branch value xi_f for a sequence of length exactly depth.
PadicApprox xi_of_branch(const TreeCoefficients& tree, const BitSequence& f);

/// Non-empty finite support. Size k has P(k) = 2^-k; indices are drawn
/// i.i.d. with P(j) proportional to 2^-j, duplicates redrawn. A positive
/// universe_size_hint conditions the law on indices below the hint.
std::set<std::size_t> sample_support(std::size_t universe_size_hint, const Seed& seed);

/// Window w(n) = ceil(n^(alpha - 1)); the sampler fills e_0, ..., e_w(n).
std::size_t nearly_uniform_window(int n, double alpha);

/// Element of the completion with coordinates e_0..e_max(w(n), min_coords-1)
/// uniform mod p^n. Any fixed coset of p^n B has probability at most
/// p^(-n (w(n)+1)) <= p^(-n^alpha). Coordinate i is drawn from its own
/// stream, so samples are consistent across n for a fixed seed.
PadicVector sample_nearly_uniform(std::uint64_t p, int n, double alpha, const Seed& seed,
                                  std::size_t min_coords = 0);

/// One random element a_n^alpha before assembly: support I_n and the
/// coefficient xi_{n,b}^alpha for each b in I_n.
struct SupportedElement {
  std::size_t index = 0;
  std::size_t label = 0;
  std::set<std::size_t> support;
  std::map<std::size_t, PadicApprox> coefficients;
};

/// Checks the support/coefficient invariants; throws kInput on violation.
void validate_supported_element(const SupportedElement& se);

}  // namespace padic_rigid
