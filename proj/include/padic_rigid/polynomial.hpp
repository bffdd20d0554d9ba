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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace padic_rigid {

/// Dense univariate integer polynomial, coefficient of x^i at index i.
/// Normalized form has no trailing zeros; the zero polynomial is empty.
using DensePoly = std::vector<mpz_class>;

/// Sparse integer polynomial in k >= 1 variables.
class IntPolynomial {
 public:
  using Exponents = std::vector<int>;

  explicit IntPolynomial(std::size_t variables);

  static IntPolynomial constant(std::size_t variables, const mpz_class& c);
  static IntPolynomial variable(std::size_t variables, std::size_t which);
  static IntPolynomial from_dense(const DensePoly& coeffs);

  /// Univariate in x: integer coefficients, `^` powers, optional `*`.
  /// Examples: "x^2+1", "3x^3 - 2*x + 7", "-x".
  static IntPolynomial parse(std::string_view text);

  std::size_t variables() const noexcept { return variables_; }
  const std::map<Exponents, mpz_class>& terms() const noexcept { return terms_; }

  void add_term(const Exponents& exponents, const mpz_class& coefficient);

  bool is_zero() const noexcept { return terms_.empty(); }
  int total_degree() const;
  /// Largest absolute coefficient; 0 for the zero polynomial.
  mpz_class height() const;

  /// Univariate only.
  DensePoly dense() const;

  std::string to_string() const;

  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
    return a.variables_ == b.variables_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t variables_;
  std::map<Exponents, mpz_class> terms_;
};

/// f(xs) mod m, with the result in [0, m).
mpz_class evaluate_mod(const IntPolynomial& f, std::span<const mpz_class> xs, const mpz_class& m);

namespace dense {

void trim(DensePoly& f);
int degree(const DensePoly& f);  // -1 for zero
DensePoly add(const DensePoly& a, const DensePoly& b);
DensePoly sub(const DensePoly& a, const DensePoly& b);
DensePoly mul(const DensePoly& a, const DensePoly& b);
DensePoly scale(const DensePoly& a, const mpz_class& c);
mpz_class content(const DensePoly& f);
/// f / content(f) with positive leading coefficient.
DensePoly primitive_part(const DensePoly& f);
mpz_class eval(const DensePoly& f, const mpz_class& x);
/// f(x) mod m for a single-word modulus, via Horner.
std::uint64_t eval_mod(const std::vector<std::uint64_t>& f_mod, std::uint64_t x, std::uint64_t m);
/// Primitive gcd over Z[x] (positive leading coefficient).
DensePoly gcd(const DensePoly& a, const DensePoly& b);
/// Exact division a / b over Z[x]; throws kInternal if b does not divide a.
DensePoly exact_div(const DensePoly& a, const DensePoly& b);
/// Sylvester resultant. Res(c, f) = c^deg f for a non-zero constant c.
mpz_class resultant(const DensePoly& a, const DensePoly& b);
std::string to_string(const DensePoly& f, char var = 'x');

}  // namespace dense

/// Determinant of an integer matrix by fraction-free elimination.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m);

}  // namespace padic_rigid
