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

#include "padic_rigid/seed.hpp"

#include <sstream>

#include "padic_rigid/errors.hpp"

namespace padic_rigid {
namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Seed::Seed(std::uint64_t root) : root_(root), key_(mix(root)) {}

Seed Seed::child(std::string_view label) const {
  Seed s = *this;
  s.key_ = mix(key_ ^ mix(fnv1a(label)));
  s.labels_.emplace_back(label);
  return s;
}

Seed Seed::child(std::int64_t index) const {
  Seed s = *this;
  // Integer labels live in a separate hash domain from string labels.
  s.key_ = mix(key_ ^ mix(static_cast<std::uint64_t>(index) ^ 0x5bd1e9955bd1e995ULL) ^ 0x1ULL);
  s.labels_.push_back("#" + std::to_string(index));
  return s;
}

std::string Seed::describe() const {
  std::ostringstream out;
  out << root_;
  for (const auto& l : labels_) out << '/' << l;
  return out.str();
}

std::uint64_t SeedStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) fail(ErrorCode::kParameter, "uniform_below: bound must be positive");
  if ((bound & (bound - 1)) == 0) return engine_() & (bound - 1);
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

std::int64_t SeedStream::uniform_range(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) fail(ErrorCode::kParameter, "uniform_range: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  return lo + static_cast<std::int64_t>(uniform_below(span));
}

mpz_class SeedStream::uniform_digits(std::uint64_t p, int digits) {
  mpz_class result = 0;
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) {
    const std::uint64_t d = uniform_below(p);
    if (d != 0) result += scale * mpz_class(static_cast<unsigned long>(d));
    scale *= static_cast<unsigned long>(p);
  }
  return result;
}

}  // namespace padic_rigid
