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
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padic_rigid/polynomial.hpp"

namespace padic_rigid {

using RingElement = std::vector<mpz_class>;      // integer coordinates
using RationalVector = std::vector<mpq_class>;   // canonical (reduced) coordinates
using IntMatrix = std::vector<std::vector<mpz_class>>;

/// Finite-rank ring with free additive group Z^n: e_i e_j = sum_k c[i][j][k] e_k.
struct RingPresentation {
  std::string name;
  std::size_t rank = 0;
  std::vector<std::vector<std::vector<mpz_class>>> structure;
  RingElement identity;
};

struct RingViolation {
  std::string kind;  // "shape", "associativity", "left-identity", "right-identity"
  std::vector<std::size_t> indices;
  std::string detail;
};

constexpr std::size_t kMaxRingRank = 16;

/// Exhaustive check of shape, associativity on basis triples and both
/// identity laws. Empty result means valid.
std::vector<RingViolation> validate(const RingPresentation& ring);

/// Throws kInput listing the first violation.
void require_valid(const RingPresentation& ring);

RingPresentation integers_ring();
RingPresentation gaussian_integers_ring();
RingPresentation z_cross_z_ring();
/// Basis E11, E12, E22.
RingPresentation upper_triangular_ring();

RingElement ring_add(const RingElement& a, const RingElement& b);
RingElement ring_sub(const RingElement& a, const RingElement& b);
RingElement ring_mul(const RingPresentation& ring, const RingElement& a, const RingElement& b);
RationalVector ring_mul(const RingPresentation& ring, const RationalVector& a, const RationalVector& b);
/// c * identity.
RingElement ring_scalar(const RingPresentation& ring, const mpz_class& c);
RationalVector to_rational(const RingElement& a);
bool is_integral(const RationalVector& v);

/// Matrix of x -> a x; column j holds the coordinates of a e_j.
IntMatrix regular_rep(const RingPresentation& ring, const RingElement& a);

/// Two-sided inverse in QA. Throws kNonInvertible when det regular_rep(x) = 0.
RationalVector invert_in_QA(const RingPresentation& ring, const RingElement& x);

/// Least m > 0 with m v integral: the lcm of the coordinate denominators.
mpz_class order_in_QA_mod_A(const RationalVector& v);

/// One coordinate of (c - a)^{-1} e as a reduced rational function of c.
struct CoordinateFraction {
  DensePoly numerator;    // zero coordinate: empty
  DensePoly denominator;  // positive leading coefficient; 1 for a zero coordinate
  mpz_class resultant;    // Res(numerator, denominator); 0 for a zero coordinate
};

struct DenominatorData {
  DensePoly f;                    // reduced denominator of the first non-zero coordinate
  std::size_t coordinate = 0;     // index of that coordinate
  std::vector<CoordinateFraction> coordinates;
  DensePoly characteristic;       // det(cI - M_a)
  std::vector<mpz_class> exceptional_primes;  // ascending

  /// p divides some resultant of a non-zero coordinate.
  bool is_exceptional(std::uint64_t p) const;
};

/// Reduced form of adj(cI - M_a) e / det(cI - M_a). Throws kParameter for
/// e = 0 and kInternal if every coordinate vanishes.
DenominatorData denominator_polynomial(const RingPresentation& ring, const RingElement& a,
                                       const RingElement& e);

/// Ascending distinct prime divisors of |n| (n != 0).
std::vector<mpz_class> prime_factors(const mpz_class& n);

/// Largest v with p^v | n (n != 0).
int p_valuation(const mpz_class& n, std::uint64_t p);

}  // namespace padic_rigid
