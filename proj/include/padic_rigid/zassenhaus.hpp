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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "padic_rigid/ring_algebra.hpp"
#include "padic_rigid/seed.hpp"

namespace padic_rigid {

/// Construction data at one prime: p^r d (c - a)^{-1} lies in A, gcd(d, p) = 1.
struct ZassenhausDatum {
  std::uint64_t p = 0;
  RingElement a;
  mpz_class c;
  int r = 1;
  mpz_class d = 1;
  mpz_class order = 1;  // order of (c - a)^{-1} in QA/A
  bool inert = false;   // p does not divide the order
};

/// Minimal (r, d) for the given (p, a, c): r = max(v_p(m), 1), d = m / p^v_p(m).
/// Throws kNonInvertible when c - a is not invertible in QA.
ZassenhausDatum complete_datum(const RingPresentation& ring, std::uint64_t p, const RingElement& a,
                               const mpz_class& c);

/// Raw draw of (a_p, c_p): a_p uniform on the non-zero points of [-H, H]^n,
/// c_p uniform on [p, 2p - 1].
std::pair<RingElement, mpz_class> draw_datum(const RingPresentation& ring, std::uint64_t p, long H,
                                             const Seed& seed);

/// Completed datum, or nullopt (skip) when c_p - a_p is not invertible.
std::optional<ZassenhausDatum> sample_datum(const RingPresentation& ring, std::uint64_t p, long H,
                                            const Seed& seed);

/// datum.a == a and datum.p divides the order of (c - a)^{-1} e.
bool verify_pair(const RingPresentation& ring, const RingElement& a, const RingElement& e,
                 const ZassenhausDatum& datum);

struct PairOutcome {
  RingElement a;
  RingElement e;
  std::string f;                          // denominator polynomial in c
  std::vector<mpz_class> exceptional_primes;
  std::optional<std::uint64_t> sampled_prime;        // first sampled datum verifying the pair
  std::vector<std::uint64_t> scan_primes;            // every prime verified by the scan
  std::optional<std::size_t> deterministic_datum;    // index into deterministic data
  bool budget_exhausted = false;                     // neither construction verified it
};

struct ConstructionReport {
  std::string ring;
  std::uint64_t budget = 0;
  long box = 0;
  std::uint64_t seed = 0;
  bool sampled_enabled = true;
  std::size_t skipped = 0;
  std::vector<ZassenhausDatum> sampled;        // one per prime p <= budget that was not skipped
  std::vector<ZassenhausDatum> deterministic;  // one per verified pair, pairwise distinct primes
  std::vector<PairOutcome> pairs;
};

struct RealizeOptions {
  std::uint64_t budget = 100;
  long box = 3;
  std::uint64_t seed = 0;
  bool deterministic_only = false;
};

/// Runs the sampled construction over all primes up to the budget and the
/// deterministic root scan for every pair. Pairs must respect the box.
ConstructionReport realize(const RingPresentation& ring,
                           const std::vector<std::pair<RingElement, RingElement>>& pairs,
                           const RealizeOptions& options);

/// `count` random pairs of non-zero elements of [-H, H]^n.
std::vector<std::pair<RingElement, RingElement>> sample_pairs(const RingPresentation& ring, long H,
                                                              std::size_t count, const Seed& seed);

/// Decomposition p_i^{-r_i}(c_i - a_i) m = a + sum_j p_j^{-r_j}(c_j - a_j) b_j,
/// with j ranging over indices into a datum list.
struct OrderCertificate {
  RingElement a;
  std::map<std::size_t, RingElement> b;
};

/// Left-multiplies the certificate by p_i^{r_i} d_i (c_i - a_i)^{-1} and
/// returns true iff p_i divides neither the order of the resulting
/// expression for d_i m nor the order of m. Throws kInput when the
/// certificate's two sides differ.
bool order_condition_check(const RingPresentation& ring, const std::vector<ZassenhausDatum>& data,
                           const RationalVector& m, std::size_t i, const OrderCertificate& cert);

}  // namespace padic_rigid
