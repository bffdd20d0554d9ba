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
#include <memory>
#include <vector>

#include <gmpxx.h>

namespace padic_rigid {

bool is_prime_u64(std::uint64_t n);

/// p-adic valuation of x, capped at cap. Zero returns cap.
int valuation_of(const mpz_class& x, std::uint64_t p, int cap);

/// Precision data shared by every value of one Z/p^N.
struct PadicParams {
  std::uint64_t p;
  int precision;
  mpz_class modulus;  // p^precision
};

using PadicParamsPtr = std::shared_ptr<const PadicParams>;

/// Validates p (prime, below 2^31) and precision (>= 1).
PadicParamsPtr make_padic_params(std::uint64_t p, int precision);

/// A p-adic integer known modulo p^N. Immutable.
class PadicApprox {
 public:
  /// Reduces any integer into [0, p^N).
  static PadicApprox from_integer(std::uint64_t p, int precision, const mpz_class& value);
  static PadicApprox from_integer(const PadicParamsPtr& params, const mpz_class& value);

  std::uint64_t p() const noexcept { return params_->p; }
  int precision() const noexcept { return params_->precision; }
  const mpz_class& residue() const noexcept { return residue_; }
  const mpz_class& modulus() const noexcept { return params_->modulus; }
  const PadicParamsPtr& params() const noexcept { return params_; }

  bool same_ring(const PadicApprox& other) const noexcept;

  friend bool operator==(const PadicApprox& a, const PadicApprox& b) {
    return a.same_ring(b) && a.residue_ == b.residue_;
  }

 private:
  PadicApprox(PadicParamsPtr params, mpz_class residue)
      : params_(std::move(params)), residue_(std::move(residue)) {}

  PadicParamsPtr params_;
  mpz_class residue_;
};

PadicApprox padd(const PadicApprox& x, const PadicApprox& y);
PadicApprox pmul(const PadicApprox& x, const PadicApprox& y);
PadicApprox pneg(const PadicApprox& x);
PadicApprox unit_inverse(const PadicApprox& x);
/// In [0, N]; a zero residue reports N, read as "at least N".
int valuation(const PadicApprox& x);
PadicApprox reduce_precision(const PadicApprox& x, int new_precision);

/// Finitely supported vector over the basis e_0, e_1, ... with entries in
/// Z/p^N. Zero entries are never stored.
class PadicVector {
 public:
  explicit PadicVector(PadicParamsPtr params) : params_(std::move(params)) {}

  static PadicVector basis(const PadicParamsPtr& params, std::size_t index);

  std::uint64_t p() const noexcept { return params_->p; }
  int precision() const noexcept { return params_->precision; }
  const PadicParamsPtr& params() const noexcept { return params_; }
  const std::map<std::size_t, mpz_class>& entries() const noexcept { return entries_; }

  /// Entry at index (zero when absent).
  mpz_class at(std::size_t index) const;
  /// Stores value mod p^N at index; zero removes the entry.
  void set(std::size_t index, const mpz_class& value);
  /// Adds value mod p^N to the entry at index.
  void add_to(std::size_t index, const mpz_class& value);

  bool is_zero() const noexcept { return entries_.empty(); }
  /// One past the largest stored index; 0 for the zero vector.
  std::size_t extent() const noexcept;
  /// Minimum entry valuation; N for the zero vector.
  int valuation() const;

  std::vector<mpz_class> dense(std::size_t length) const;
  bool same_ring(const PadicVector& other) const noexcept;

  friend bool operator==(const PadicVector& a, const PadicVector& b) {
    return a.same_ring(b) && a.entries_ == b.entries_;
  }

 private:
  PadicParamsPtr params_;
  std::map<std::size_t, mpz_class> entries_;
};

PadicVector vadd(const PadicVector& x, const PadicVector& y);
PadicVector vscale(const PadicVector& x, const mpz_class& factor);
PadicVector reduce_precision(const PadicVector& x, int new_precision);
/// Drops every entry with index >= length.
PadicVector restrict_window(const PadicVector& x, std::size_t length);

}  // namespace padic_rigid
