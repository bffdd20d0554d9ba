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
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace padic_rigid {

/// Root seed plus a labeled derivation path. Two seeds with the same root
/// and path produce the same stream, regardless of when or on which thread
/// the stream is created.
class Seed {
 public:
  explicit Seed(std::uint64_t root = 0);

  Seed child(std::string_view label) const;
  Seed child(std::int64_t index) const;

  template <typename First, typename... Rest>
  Seed path(const First& first, const Rest&... rest) const {
    Seed s = child(first);
    if constexpr (sizeof...(rest) == 0) {
      return s;
    } else {
      return s.path(rest...);
    }
  }

  std::uint64_t root() const noexcept { return root_; }
  std::uint64_t key() const noexcept { return key_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::string describe() const;

 private:
  std::uint64_t root_;
  std::uint64_t key_;
  std::vector<std::string> labels_;
};

/// Deterministic draw stream. std::mt19937_64 has a fully specified output
/// sequence; bounded draws use rejection so results do not depend on the
/// standard library's distribution implementations.
class SeedStream {
 public:
  explicit SeedStream(const Seed& seed) : engine_(seed.key()) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_range(std::int64_t lo, std::int64_t hi);

  /// Uniform residue in [0, p^digits), drawn one base-p digit at a time,
  /// least significant first.
  mpz_class uniform_digits(std::uint64_t p, int digits);

  /// Fair coin.
  bool bit() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace padic_rigid
