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

namespace padic_rigid {

using ModMatrix = std::vector<std::vector<mpz_class>>;  // row-major

/// Exact linear algebra over the chain ring Z/p^N.
///
/// The constructor computes invertible L, R with L * A * R = D, where D is
/// diagonal with entries p^{v_0}, ..., p^{v_{r-1}} followed by zeros and
/// v_0 <= v_1 <= ... (the Smith invariants of A over Z/p^N). Full pivoting
/// on the entry of least valuation makes every elimination step exact, so
/// solvability of A y = b reduces to valuation checks on L b.
class ModPNSystem {
 public:
  ModPNSystem(std::uint64_t p, int precision, const ModMatrix& a, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return pivots_.size(); }
  const std::vector<int>& pivot_valuations() const noexcept { return pivots_; }
  const mpz_class& modulus() const noexcept { return modulus_; }

  /// Some y with A y = b (mod p^N), or nullopt when b is not in the column
  /// space.
  std::optional<std::vector<mpz_class>> solve(const std::vector<mpz_class>& rhs) const;

  /// Generators of {y : A y = 0 (mod p^N)} as a Z/p^N-module.
  std::vector<std::vector<mpz_class>> kernel_generators() const;

 private:
  std::uint64_t p_;
  int precision_;
  mpz_class modulus_;
  std::size_t rows_;
  std::size_t cols_;
  ModMatrix left_;   // rows x rows
  ModMatrix right_;  // cols x cols
  std::vector<int> pivots_;
};

/// Convenience: A y = b over Z/p^N without keeping the factorization.
std::optional<std::vector<mpz_class>> solve_mod_pn(std::uint64_t p, int precision,
                                                   const ModMatrix& a, std::size_t cols,
                                                   const std::vector<mpz_class>& rhs);

/// A * y mod p^N.
std::vector<mpz_class> mat_vec_mod(const ModMatrix& a, const std::vector<mpz_class>& y,
                                   const mpz_class& modulus);

}  // namespace padic_rigid
