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

#include "padic_rigid/modpn_linear.hpp"

#include <algorithm>
#include <utility>

#include "padic_rigid/errors.hpp"
#include "padic_rigid/padic.hpp"

namespace padic_rigid {
namespace {

void mod_reduce(mpz_class& x, const mpz_class& m) {
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
}

ModMatrix identity(std::size_t n) {
  ModMatrix id(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

// dst -= f * src, entrywise mod m.
void axpy_row(std::vector<mpz_class>& dst, const std::vector<mpz_class>& src, const mpz_class& f,
              const mpz_class& m) {
  for (std::size_t k = 0; k < dst.size(); ++k) {
    if (src[k] == 0) continue;
    mpz_submul(dst[k].get_mpz_t(), f.get_mpz_t(), src[k].get_mpz_t());
    mod_reduce(dst[k], m);
  }
}

void axpy_col(ModMatrix& a, std::size_t dst, std::size_t src, const mpz_class& f,
              const mpz_class& m) {
  for (auto& row : a) {
    if (row[src] == 0) continue;
    mpz_submul(row[dst].get_mpz_t(), f.get_mpz_t(), row[src].get_mpz_t());
    mod_reduce(row[dst], m);
  }
}

}  // namespace

ModPNSystem::ModPNSystem(std::uint64_t p, int precision, const ModMatrix& a, std::size_t cols)
    : p_(p), precision_(precision), rows_(a.size()), cols_(cols) {
  if (precision < 1) fail(ErrorCode::kParameter, "ModPNSystem: precision must be positive");
  mpz_ui_pow_ui(modulus_.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(precision));
  ModMatrix w(rows_, std::vector<mpz_class>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    if (a[i].size() != cols_) fail(ErrorCode::kArity, "ModPNSystem: ragged matrix");
    for (std::size_t j = 0; j < cols_; ++j) {
      w[i][j] = a[i][j];
      mod_reduce(w[i][j], modulus_);
    }
  }
  left_ = identity(rows_);
  right_ = identity(cols_);

  const std::size_t steps = std::min(rows_, cols_);
  mpz_class pv, f, unit, unit_inv;
  for (std::size_t t = 0; t < steps; ++t) {
    int best = precision_;
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < rows_ && best > 0; ++i) {
      for (std::size_t j = t; j < cols_; ++j) {
        if (w[i][j] == 0) continue;
        const int v = valuation_of(w[i][j], p_, best);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    }
    if (best == precision_) break;

    if (bi != t) {
      std::swap(w[bi], w[t]);
      std::swap(left_[bi], left_[t]);
    }
    if (bj != t) {
      for (auto& row : w) std::swap(row[bj], row[t]);
      for (auto& row : right_) std::swap(row[bj], row[t]);
    }

    mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(best));
    mpz_divexact(unit.get_mpz_t(), w[t][t].get_mpz_t(), pv.get_mpz_t());
    if (mpz_invert(unit_inv.get_mpz_t(), unit.get_mpz_t(), modulus_.get_mpz_t()) == 0) {
      fail(ErrorCode::kInternal, "ModPNSystem: pivot cofactor is not a unit");
    }
    for (auto& x : w[t]) {
      x *= unit_inv;
      mod_reduce(x, modulus_);
    }
    for (auto& x : left_[t]) {
      x *= unit_inv;
      mod_reduce(x, modulus_);
    }

    for (std::size_t i = t + 1; i < rows_; ++i) {
      if (w[i][t] == 0) continue;
      mpz_divexact(f.get_mpz_t(), w[i][t].get_mpz_t(), pv.get_mpz_t());
      axpy_row(w[i], w[t], f, modulus_);
      axpy_row(left_[i], left_[t], f, modulus_);
    }
    for (std::size_t j = t + 1; j < cols_; ++j) {
      if (w[t][j] == 0) continue;
      mpz_divexact(f.get_mpz_t(), w[t][j].get_mpz_t(), pv.get_mpz_t());
      axpy_col(w, j, t, f, modulus_);
      axpy_col(right_, j, t, f, modulus_);
    }
    pivots_.push_back(best);
  }
}

std::optional<std::vector<mpz_class>> ModPNSystem::solve(const std::vector<mpz_class>& rhs) const {
  if (rhs.size() != rows_) fail(ErrorCode::kArity, "ModPNSystem::solve: rhs length mismatch");
  std::vector<mpz_class> c = mat_vec_mod(left_, rhs, modulus_);
  std::vector<mpz_class> yp(cols_);
  mpz_class pv;
  for (std::size_t t = 0; t < rows_; ++t) {
    if (t < pivots_.size()) {
      if (c[t] == 0) continue;
      if (valuation_of(c[t], p_, precision_) < pivots_[t]) return std::nullopt;
      mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(p_),
                    static_cast<unsigned long>(pivots_[t]));
      mpz_divexact(yp[t].get_mpz_t(), c[t].get_mpz_t(), pv.get_mpz_t());
    } else if (c[t] != 0) {
      return std::nullopt;
    }
  }
  return mat_vec_mod(right_, yp, modulus_);
}

std::vector<std::vector<mpz_class>> ModPNSystem::kernel_generators() const {
  std::vector<std::vector<mpz_class>> gens;
  mpz_class scale;
  for (std::size_t t = 0; t < cols_; ++t) {
    std::vector<mpz_class> e(cols_);
    if (t < pivots_.size()) {
      if (pivots_[t] == 0) continue;
      mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(p_),
                    static_cast<unsigned long>(precision_ - pivots_[t]));
      e[t] = scale;
    } else {
      e[t] = 1;
    }
    gens.push_back(mat_vec_mod(right_, e, modulus_));
  }
  return gens;
}

std::optional<std::vector<mpz_class>> solve_mod_pn(std::uint64_t p, int precision,
                                                   const ModMatrix& a, std::size_t cols,
                                                   const std::vector<mpz_class>& rhs) {
  return ModPNSystem(p, precision, a, cols).solve(rhs);
}

std::vector<mpz_class> mat_vec_mod(const ModMatrix& a, const std::vector<mpz_class>& y,
                                   const mpz_class& modulus) {
  std::vector<mpz_class> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (a[i][j] == 0 || y[j] == 0) continue;
      mpz_addmul(out[i].get_mpz_t(), a[i][j].get_mpz_t(), y[j].get_mpz_t());
    }
    mod_reduce(out[i], modulus);
  }
  return out;
}

}  // namespace padic_rigid
