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
#include <functional>
#include <vector>

#include <gmpxx.h>

namespace padic_rigid {

using IntVector = std::vector<mpz_class>;
using IntBasis = std::vector<IntVector>;  // one basis vector per row

/// Integral LLL reduction (exact arithmetic, no floating point) with
/// Lovász constant delta_num / delta_den. Rows must be linearly
/// independent; throws kInput otherwise.
IntBasis lll_reduce(IntBasis basis, long delta_num = 99, long delta_den = 100);

/// Hermite normal form of the lattice generated by `generators` (rows of
/// length dim). Returns a basis in upper triangular echelon form with
/// positive pivots; zero generators are ignored.
IntBasis hnf_basis(const IntBasis& generators, std::size_t dim);

struct EnumerationStats {
  std::uint64_t nodes = 0;
  bool exhausted_budget = false;
};

/// Visits every non-zero lattice vector v with |v|^2 <= radius_squared, in
/// Schnorr-Euchner order (short candidates first at each level). The
/// visitor gets the exact vector and its coefficient vector; returning
/// true stops the enumeration. Gram-Schmidt data is floating point, so the
/// radius carries a small relative slack; callers re-check exact bounds.
EnumerationStats enumerate_short_vectors(
    const IntBasis& basis, const mpz_class& radius_squared, std::uint64_t node_budget,
    const std::function<bool(const IntVector&, const std::vector<long>&)>& visit);

}  // namespace padic_rigid
