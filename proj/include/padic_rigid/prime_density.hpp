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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padic_rigid/polynomial.hpp"

namespace padic_rigid {

/// Primes <= X in ascending order (sieve of Eratosthenes). X >= 2.
std::vector<std::uint64_t> primes_up_to(std::uint64_t X);

/// Roots of f in [0, p), ascending, by a finite-difference scan.
std::vector<std::uint64_t> roots_mod_p(const DensePoly& f, std::uint64_t p);

/// Smallest root of f in [0, p), if any.
std::optional<std::uint64_t> smallest_root_mod_p(const DensePoly& f, std::uint64_t p);

/// Throws kParameter for constant f.
bool has_root_mod_p(const IntPolynomial& f, std::uint64_t p);

struct DecadeRow {
  std::uint64_t bound = 0;
  std::uint64_t primes_scanned = 0;
  std::uint64_t primes_with_root = 0;
  mpq_class reciprocal_sum;  // exact sum of 1/p over primes <= bound with a root
};

struct DensityReport {
  std::string polynomial;
  std::uint64_t bound = 0;
  std::uint64_t primes_scanned = 0;
  std::uint64_t primes_with_root = 0;
  mpq_class reciprocal_sum;
  mpq_class density;
  std::vector<DecadeRow> decades;  // every power of ten in [10, X], then X itself
};

/// Exact reciprocal sum of distinct primes; the result is already reduced.
mpq_class reciprocal_sum(const std::vector<std::uint64_t>& primes);

DensityReport density_report(const IntPolynomial& f, std::uint64_t X, unsigned threads = 0);

}  // namespace padic_rigid
