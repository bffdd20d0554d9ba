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

#include "padic_rigid/random_padic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "padic_rigid/errors.hpp"

namespace padic_rigid {
namespace {

// Number of failures before the first success of a fair coin.
std::size_t geometric(SeedStream& stream) {
  std::size_t k = 0;
  while (!stream.bit()) ++k;
  return k;
}

}  // namespace

BitSequence BitSequence::prefix(int n) const {
  if (n < 0 || n > length) fail(ErrorCode::kOutOfRange, "BitSequence::prefix out of range");
  BitSequence out;
  out.length = n;
  out.bits = n >= 64 ? bits : (bits & ((std::uint64_t{1} << n) - 1));
  return out;
}

int tree_precision(int level) { return (1 << (level + 1)) - 1; }

mpz_class tree_digit_bound(std::uint64_t p, int level) {
  mpz_class b;
  mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(p), 1UL << level);
  return b;
}

TreeCoefficients::TreeCoefficients(std::uint64_t p, int depth,
                                   std::vector<std::vector<mpz_class>> levels)
    : p_(p), depth_(depth), levels_(std::move(levels)) {
  if (depth_ < 0 || depth_ > 20) fail(ErrorCode::kParameter, "tree depth must lie in [0, 20]");
  if (levels_.size() != static_cast<std::size_t>(depth_) + 1) {
    fail(ErrorCode::kInput, "tree must have one level per length 0..depth");
  }
  for (int n = 0; n <= depth_; ++n) {
    if (levels_[n].size() != (std::size_t{1} << n)) {
      fail(ErrorCode::kInput, "tree level " + std::to_string(n) + " has wrong digit count");
    }
    const mpz_class bound = tree_digit_bound(p_, n);
    for (const auto& d : levels_[n]) {
      if (d < 0 || d >= bound) {
        fail(ErrorCode::kInput, "tree digit outside [0, p^(2^n)) at level " + std::to_string(n));
      }
    }
  }
}

const mpz_class& TreeCoefficients::digit(const BitSequence& s) const {
  if (s.length < 0 || s.length > depth_) fail(ErrorCode::kOutOfRange, "sequence longer than tree depth");
  return levels_[s.length][s.bits];
}

std::size_t TreeCoefficients::digit_count() const noexcept {
  std::size_t n = 0;
  for (const auto& level : levels_) n += level.size();
  return n;
}

PadicApprox sample_uniform(std::uint64_t p, int precision, const Seed& seed) {
  auto params = make_padic_params(p, precision);
  SeedStream stream(seed.child("uniform"));
  return PadicApprox::from_integer(params, stream.uniform_digits(p, precision));
}

TreeCoefficients sample_tree(std::uint64_t p, int depth, const Seed& seed) {
  if (depth < 0 || depth > 20) fail(ErrorCode::kParameter, "tree depth must lie in [0, 20]");
  if (!is_prime_u64(p)) fail(ErrorCode::kParameter, "p must be prime");
  std::vector<std::vector<mpz_class>> levels(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n) {
    const std::size_t width = std::size_t{1} << n;
    levels[n].resize(width);
    for (std::size_t bits = 0; bits < width; ++bits) {
      SeedStream stream(seed.path("node", n, static_cast<std::int64_t>(bits)));
      levels[n][bits] = stream.uniform_digits(p, 1 << n);
    }
  }
  return TreeCoefficients(p, depth, std::move(levels));
}

PadicApprox partial_sum_b(const TreeCoefficients& tree, const BitSequence& s) {
  if (s.length > tree.depth()) {
    fail(ErrorCode::kOutOfRange, "partial_sum_b: sequence of length " + std::to_string(s.length) +
                                     " exceeds depth " + std::to_string(tree.depth()));
  }
  mpz_class sum = 0;
  mpz_class shift;
  for (int j = 0; j <= s.length; ++j) {
    mpz_ui_pow_ui(shift.get_mpz_t(), static_cast<unsigned long>(tree.p()),
                  static_cast<unsigned long>((1 << j) - 1));
    sum += shift * tree.digit(s.prefix(j));
  }
  return PadicApprox::from_integer(tree.p(), tree_precision(s.length), sum);
}

PadicApprox xi_of_branch(const TreeCoefficients& tree, const BitSequence& f) {
  if (f.length != tree.depth()) {
    fail(ErrorCode::kArity, "xi_of_branch: branch length " + std::to_string(f.length) +
                                " differs from depth " + std::to_string(tree.depth()));
  }
  return partial_sum_b(tree, f);
}

std::set<std::size_t> sample_support(std::size_t universe_size_hint, const Seed& seed) {
  SeedStream stream(seed.child("support"));
  std::size_t k;
  do {
    k = geometric(stream) + 1;
  } while (universe_size_hint > 0 && k > universe_size_hint);
  std::set<std::size_t> out;
  while (out.size() < k) {
    const std::size_t j = geometric(stream);
    if (universe_size_hint > 0 && j >= universe_size_hint) continue;
    out.insert(j);
  }
  return out;
}

std::size_t nearly_uniform_window(int n, double alpha) {
  const double x = std::pow(static_cast<double>(n), alpha - 1.0);
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

PadicVector sample_nearly_uniform(std::uint64_t p, int n, double alpha, const Seed& seed,
                                  std::size_t min_coords) {
  if (!(alpha > 1.0)) fail(ErrorCode::kParameter, "nearly uniform sampler needs alpha > 1");
  if (n < 1) fail(ErrorCode::kParameter, "nearly uniform sampler needs n >= 1");
  auto params = make_padic_params(p, n);
  const std::size_t coords = std::max(nearly_uniform_window(n, alpha) + 1, min_coords);
  PadicVector out(params);
  for (std::size_t i = 0; i < coords; ++i) {
    SeedStream stream(seed.path("coord", static_cast<std::int64_t>(i)));
    out.set(i, stream.uniform_digits(p, n));
  }
  return out;
}

void validate_supported_element(const SupportedElement& se) {
  if (se.support.empty()) fail(ErrorCode::kInput, "supported element has empty support");
  if (se.coefficients.size() != se.support.size()) {
    fail(ErrorCode::kInput, "coefficient map must have exactly the support as keys");
  }
  for (auto b : se.support) {
    if (se.coefficients.find(b) == se.coefficients.end()) {
      fail(ErrorCode::kInput, "missing coefficient for support index " + std::to_string(b));
    }
  }
}

}  // namespace padic_rigid
