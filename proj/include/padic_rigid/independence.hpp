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
#include "padic_rigid/polynomial.hpp"

namespace padic_rigid {

/// f(xs) in Z/p^N. All xs share (p, N); xs.size() == f.variables().
PadicApprox evaluate(const IntPolynomial& f, const std::vector<PadicApprox>& xs);

/// Exponent vectors of total degree <= d in k variables: by degree, then
/// lexicographically descending (1, x1, x2, x1^2, x1 x2, x2^2, ...).
std::vector<IntPolynomial::Exponents> monomials_up_to(std::size_t k, int d);

struct RelationLimits {
  std::size_t max_monomials = 64;
  std::uint64_t node_budget = 200'000'000;
};

/// Outcome of a bounded relation search. A found witness is a relation at
/// precision N only.
struct RelationReport {
  bool found = false;
  std::optional<IntPolynomial> witness;
  int degree_bound = 0;
  long height_bound = 0;
  int precision = 0;
  std::uint64_t p = 0;
  std::size_t monomials = 0;
  std::uint64_t nodes = 0;
};

/// Decides whether a non-zero polynomial with total degree <= d and
/// coefficients in [-H, H] vanishes mod p^N on xs. The witness, when found,
/// has minimal Euclidean coefficient norm among such relations, ties broken
/// by coefficient order; its first non-zero coefficient is positive.
/// Throws kResource when the monomial count or node budget is exceeded.
RelationReport find_relation(const std::vector<PadicApprox>& xs, int d, long H,
                             const RelationLimits& limits = {});

/// Number of x in [0, p^N) with g(x) = 0 mod p^N. g univariate, non-zero.
mpz_class count_roots_mod_pN(const IntPolynomial& g, std::uint64_t p, int N);

/// l * p^(N - floor((N - M) / l)); requires l >= 1.
mpz_class root_count_bound(std::size_t l, int M, std::uint64_t p, int N);

/// Checks count_roots_mod_pN(g) against root_count_bound for the factored
/// form g = h * prod (x - lambda_i). Throws kInput when the identity fails
/// or h has a root mod p^(M+1); kParameter unless N > M >= 0. With no
/// linear factors the result is true.
bool root_bound_check(const IntPolynomial& g, const std::vector<mpz_class>& lambdas,
                      const IntPolynomial& h, int M, std::uint64_t p, int N);

}  // namespace padic_rigid
