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

#include "padic_rigid/padic.hpp"

#include <algorithm>
#include <string>

#include "padic_rigid/errors.hpp"

namespace padic_rigid {
namespace {

void require_same(const PadicApprox& x, const PadicApprox& y, const char* op) {
  if (!x.same_ring(y)) {
    fail(ErrorCode::kIncompatibleOperands,
         std::string(op) + ": operands differ in p or precision (" + std::to_string(x.p()) + "^" +
             std::to_string(x.precision()) + " vs " + std::to_string(y.p()) + "^" +
             std::to_string(y.precision()) + ")");
  }
}

void require_same(const PadicVector& x, const PadicVector& y, const char* op) {
  if (!x.same_ring(y)) {
    fail(ErrorCode::kIncompatibleOperands, std::string(op) + ": vectors differ in p or precision");
  }
}

mpz_class reduce(const mpz_class& v, const mpz_class& modulus) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

int valuation_of(const mpz_class& x, std::uint64_t p, int cap) {
  if (x == 0) return cap;
  mpz_class q = x;
  int v = 0;
  while (v < cap && mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

PadicParamsPtr make_padic_params(std::uint64_t p, int precision) {
  if (p >= (std::uint64_t{1} << 31)) fail(ErrorCode::kParameter, "p must be below 2^31");
  if (!is_prime_u64(p)) fail(ErrorCode::kParameter, "p = " + std::to_string(p) + " is not prime");
  if (precision < 1) fail(ErrorCode::kParameter, "precision must be at least 1");
  auto params = std::make_shared<PadicParams>();
  params->p = p;
  params->precision = precision;
  mpz_ui_pow_ui(params->modulus.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(precision));
  return params;
}

PadicApprox PadicApprox::from_integer(std::uint64_t p, int precision, const mpz_class& value) {
  return from_integer(make_padic_params(p, precision), value);
}

PadicApprox PadicApprox::from_integer(const PadicParamsPtr& params, const mpz_class& value) {
  return PadicApprox(params, reduce(value, params->modulus));
}

bool PadicApprox::same_ring(const PadicApprox& other) const noexcept {
  return params_ == other.params_ ||
         (params_->p == other.params_->p && params_->precision == other.params_->precision);
}

PadicApprox padd(const PadicApprox& x, const PadicApprox& y) {
  require_same(x, y, "padd");
  mpz_class s = x.residue() + y.residue();
  if (s >= x.modulus()) s -= x.modulus();
  return PadicApprox::from_integer(x.params(), s);
}

PadicApprox pmul(const PadicApprox& x, const PadicApprox& y) {
  require_same(x, y, "pmul");
  return PadicApprox::from_integer(x.params(), x.residue() * y.residue());
}

PadicApprox pneg(const PadicApprox& x) {
  return PadicApprox::from_integer(x.params(), -x.residue());
}

PadicApprox unit_inverse(const PadicApprox& x) {
  if (mpz_divisible_ui_p(x.residue().get_mpz_t(), static_cast<unsigned long>(x.p()))) {
    fail(ErrorCode::kNonUnit, "unit_inverse: " + x.residue().get_str() + " is divisible by p = " +
                                  std::to_string(x.p()));
  }
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), x.residue().get_mpz_t(), x.modulus().get_mpz_t());
  return PadicApprox::from_integer(x.params(), inv);
}

int valuation(const PadicApprox& x) {
  return valuation_of(x.residue(), x.p(), x.precision());
}

PadicApprox reduce_precision(const PadicApprox& x, int new_precision) {
  if (new_precision < 1 || new_precision > x.precision()) {
    fail(ErrorCode::kOutOfRange, "reduce_precision: target " + std::to_string(new_precision) +
                                     " outside [1, " + std::to_string(x.precision()) + "]");
  }
  if (new_precision == x.precision()) return x;
  return PadicApprox::from_integer(make_padic_params(x.p(), new_precision), x.residue());
}

PadicVector PadicVector::basis(const PadicParamsPtr& params, std::size_t index) {
  PadicVector v(params);
  v.set(index, 1);
  return v;
}

mpz_class PadicVector::at(std::size_t index) const {
  auto it = entries_.find(index);
  return it == entries_.end() ? mpz_class(0) : it->second;
}

void PadicVector::set(std::size_t index, const mpz_class& value) {
  mpz_class r = reduce(value, params_->modulus);
  if (r == 0) {
    entries_.erase(index);
  } else {
    entries_[index] = std::move(r);
  }
}

void PadicVector::add_to(std::size_t index, const mpz_class& value) {
  set(index, at(index) + value);
}

std::size_t PadicVector::extent() const noexcept {
  return entries_.empty() ? 0 : entries_.rbegin()->first + 1;
}

int PadicVector::valuation() const {
  int v = params_->precision;
  for (const auto& [i, r] : entries_) {
    v = std::min(v, valuation_of(r, params_->p, params_->precision));
  }
  return v;
}

std::vector<mpz_class> PadicVector::dense(std::size_t length) const {
  std::vector<mpz_class> out(length);
  for (const auto& [i, r] : entries_) {
    if (i >= length) {
      fail(ErrorCode::kOutOfRange, "vector entry " + std::to_string(i) + " outside window of length " +
                                       std::to_string(length));
    }
    out[i] = r;
  }
  return out;
}

bool PadicVector::same_ring(const PadicVector& other) const noexcept {
  return params_ == other.params_ ||
         (params_->p == other.params_->p && params_->precision == other.params_->precision);
}

PadicVector vadd(const PadicVector& x, const PadicVector& y) {
  require_same(x, y, "vadd");
  PadicVector out = x;
  for (const auto& [i, r] : y.entries()) out.add_to(i, r);
  return out;
}

PadicVector vscale(const PadicVector& x, const mpz_class& factor) {
  PadicVector out(x.params());
  for (const auto& [i, r] : x.entries()) out.set(i, r * factor);
  return out;
}

PadicVector reduce_precision(const PadicVector& x, int new_precision) {
  if (new_precision < 1 || new_precision > x.precision()) {
    fail(ErrorCode::kOutOfRange, "reduce_precision: target " + std::to_string(new_precision) +
                                     " outside [1, " + std::to_string(x.precision()) + "]");
  }
  PadicVector out(make_padic_params(x.p(), new_precision));
  for (const auto& [i, r] : x.entries()) out.set(i, r);
  return out;
}

PadicVector restrict_window(const PadicVector& x, std::size_t length) {
  PadicVector out(x.params());
  for (const auto& [i, r] : x.entries()) {
    if (i < length) out.set(i, r);
  }
  return out;
}

}  // namespace padic_rigid
