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
#include <set>
#include <utility>
#include <vector>

#include "padic_rigid/padic.hpp"
#include "padic_rigid/random_padic.hpp"
#include "padic_rigid/ring_algebra.hpp"
#include "padic_rigid/seed.hpp"

namespace padic_rigid {

/// Additive coordinates of the window B_w = R u_0 + ... + R u_{w-1}: index
/// b * rank(R) + t is the coordinate of u_b along the t-th basis element of R.
///
/// The coefficients xi are transcendental, so an element of the corner group
/// is a formal expression z + sum_j r_j a_j(xi) with z and r_j independent of
/// xi. A model therefore keeps T independent realizations of every xi; a
/// ModelVector holds one PadicVector per realization, and membership asks for
/// a single (k, z, r_j) that works in every realization at once.
using ModelVector = std::vector<PadicVector>;

struct CornerParams {
  std::uint64_t p = 5;
  int precision = 16;        // N
  int denominator_cap = 8;   // K
  std::size_t window = 4;    // R-rank of the basis window
  std::size_t labels = 3;
  std::size_t per_label = 2; // generators a_n^alpha per label (n < per_label)
  std::size_t realizations = 8;
};

struct CornerGenerator {
  std::size_t n = 0;
  std::size_t label = 0;
  std::set<std::size_t> support;  // I_n, shared by every label
  /// xi[t][b] for realization t and b in I_n.
  std::vector<std::map<std::size_t, PadicApprox>> xi;
};

struct CornerModel {
  RingPresentation ring;
  CornerParams params;
  std::uint64_t seed = 0;
  int tree_depth = 0;
  std::vector<CornerGenerator> generators;
  std::vector<ModelVector> values;  // values[g][t] = a_g in realization t

  std::size_t abelian_rank() const { return params.window * ring.rank; }
  PadicParamsPtr padic() const;
};

/// Entry identity(R)_t * xi_b at index b * rank(R) + t for b in the support.
/// For R = Z the entry xi_b sits at index b.
PadicVector build_generator(const RingPresentation& ring, const SupportedElement& se,
                            std::size_t window, int precision);

/// Smallest tree depth D with 2^(D+1) - 1 >= N.
int corner_tree_depth(int precision);

/// Supports I_n come from the seed path ("support", n); the coefficient
/// xi_{n,b}^alpha in realization t is branch alpha (label bits as the first
/// edges) of the tree with seed path ("tree", n, b, t), reduced to precision N.
CornerModel build_corner_model(const RingPresentation& ring, const CornerParams& params,
                               std::uint64_t seed);

/// The same vector in every realization.
ModelVector constant_vector(const CornerModel& model, const PadicVector& x);

/// Left action of r on every u_b block.
ModelVector ring_act(const CornerModel& model, const RingElement& r, const ModelVector& x);

ModelVector model_add(const ModelVector& x, const ModelVector& y);

enum class MembershipVerdict { kInAtPrecision, kNotIn };

struct MembershipResult {
  MembershipVerdict verdict = MembershipVerdict::kNotIn;
  std::optional<int> k;  // minimal exponent when InAtPrecision
};

/// Decides whether p^k x = z + sum_j r_j a_j (mod p^N) for some k <= cap,
/// integral z in the window and r_j in R (x) Z/p^N, over generators with
/// labels in A. cap defaults to the model's K.
MembershipResult membership(const ModelVector& x, const CornerModel& model,
                            const std::set<std::size_t>& A, std::optional<int> cap = std::nullopt);
MembershipResult membership(const PadicVector& x, const CornerModel& model,
                            const std::set<std::size_t>& A, std::optional<int> cap = std::nullopt);

bool mult_by_r_probe(const RingElement& r, const CornerModel& model, const std::set<std::size_t>& A);

/// Additive endomorphism of the window given by the images of the additive
/// basis; extended to model vectors coefficientwise.
struct AdditiveMap {
  std::vector<PadicVector> images;
};

AdditiveMap identity_map(const CornerModel& model);
AdditiveMap multiplication_map(const CornerModel& model, const RingElement& r);

/// Uniform images in the window mod p^N, redrawn while the map agrees with
/// multiplication by one of `excluded`.
AdditiveMap random_additive_map(const CornerModel& model, const Seed& seed,
                                const std::vector<RingElement>& excluded);

ModelVector apply_map(const CornerModel& model, const AdditiveMap& phi, const ModelVector& x);

enum class RigidityVerdict { kConsistent, kViolation };

struct RigidityResult {
  RigidityVerdict verdict = RigidityVerdict::kConsistent;
  std::optional<std::size_t> failing_generator;
};

/// Violation when phi(a_g) fails membership w.r.t. D for some generator a_g
/// with label in A.
RigidityResult rigidity_check(const CornerModel& model, const AdditiveMap& phi,
                              const std::set<std::size_t>& A, const std::set<std::size_t>& D);

/// rigidity_check with a random map that is not multiplication by 0, 1 or any
/// of 16 sampled ring elements with coordinates in [-3, 3].
RigidityResult rigidity_trial(const CornerModel& model, const std::set<std::size_t>& A,
                              const std::set<std::size_t>& D, const Seed& seed);

/// Every (A, D) pair of label subsets with A non-empty: A inside D when
/// a_subset_of_d, otherwise A not inside D (D may then be empty).
std::vector<std::pair<std::set<std::size_t>, std::set<std::size_t>>> label_pairs(
    std::size_t labels, bool a_subset_of_d);

}  // namespace padic_rigid
