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

#include <cmath>
#include <limits>

#include "padic_rigid/corner.hpp"
#include "padic_rigid/errors.hpp"
#include "padic_rigid/free_detector.hpp"
#include "padic_rigid/independence.hpp"
#include "padic_rigid/padic.hpp"
#include "padic_rigid/random_padic.hpp"
#include "padic_rigid/stats.hpp"

namespace padic_rigid {
namespace {

constexpr double kRequired = std::numeric_limits<double>::quiet_NaN();

long as_long(const ExperimentParams& params, const std::string& key, double fallback) {
  const double v = param_or(params, key, fallback);
  if (v != std::floor(v)) fail(ErrorCode::kParameter, "experiment parameter '" + key + "' must be an integer");
  return static_cast<long>(v);
}

Experiment gl_experiment(const ExperimentParams& params) {
  const int n = static_cast<int>(as_long(params, "n", kRequired));
  const auto q = static_cast<std::uint64_t>(as_long(params, "q", kRequired));
  if (!is_prime_u64(q)) fail(ErrorCode::kUnsupported, "gl experiment: prime q only");
  Experiment e;
  e.target = gl_invertible_probability(n, q);
  e.trial = [n, q](const Seed& s) {
    SeedStream stream(s);
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n));
    for (auto& row : m) {
      for (auto& x : row) x = stream.uniform_below(q);
    }
    return rank_mod_prime(std::move(m), q) == static_cast<std::size_t>(n);
  };
  return e;
}

// Success: a in span(b_1..b_k) + p^n B, with the b_i fixed by basis_seed.
Experiment containment_experiment(const ExperimentParams& params) {
  const auto k = static_cast<std::size_t>(as_long(params, "k", 1));
  const int n = static_cast<int>(as_long(params, "n", kRequired));
  const double alpha = param_or(params, "alpha", 1.5);
  const auto p = static_cast<std::uint64_t>(as_long(params, "p", 2));
  const auto basis_seed = static_cast<std::uint64_t>(as_long(params, "basis_seed", 0));
  if (!is_prime_u64(p)) fail(ErrorCode::kParameter, "containment experiment: p must be prime");
  std::vector<PadicVector> basis;
  for (std::size_t i = 0; i < k; ++i) {
    basis.push_back(sample_nearly_uniform(p, n, alpha, Seed(basis_seed).path("basis", static_cast<std::int64_t>(i))));
  }
  Experiment e;
  e.trial = [=](const Seed& s) { return contained_mod_pn(sample_nearly_uniform(p, n, alpha, s), basis); };
  return e;
}

// Success: Violation. mode 0 draws random non-multiplication maps over A inside
// D; mode 1 applies the identity over A not inside D. Each trial builds its own
// model and takes the pair (A, D) by trial order.
Experiment rigidity_experiment(const ExperimentParams& params) {
  CornerParams cp;
  cp.p = static_cast<std::uint64_t>(as_long(params, "p", 5));
  cp.precision = static_cast<int>(as_long(params, "precision", 16));
  cp.denominator_cap = static_cast<int>(as_long(params, "cap", 8));
  cp.window = static_cast<std::size_t>(as_long(params, "window", 4));
  cp.labels = static_cast<std::size_t>(as_long(params, "labels", 3));
  cp.per_label = static_cast<std::size_t>(as_long(params, "per_label", 2));
  cp.realizations = static_cast<std::size_t>(as_long(params, "realizations", 8));
  const long mode = as_long(params, "mode", 0);
  const long ring_id = as_long(params, "ring", 1);
  if (mode != 0 && mode != 1) fail(ErrorCode::kParameter, "rigidity experiment: mode must be 0 or 1");
  RingPresentation ring;
  switch (ring_id) {
    case 0: ring = integers_ring(); break;
    case 1: ring = gaussian_integers_ring(); break;
    case 2: ring = z_cross_z_ring(); break;
    case 3: ring = upper_triangular_ring(); break;
    default: fail(ErrorCode::kParameter, "rigidity experiment: ring must be 0..3");
  }
  const auto pairs = label_pairs(cp.labels, mode == 0);
  Experiment e;
  e.trial = [=](const Seed& s) {
    const CornerModel model = build_corner_model(ring, cp, s.child("model").key());
    const auto& [A, D] = pairs[s.child("pair").key() % pairs.size()];
    const RigidityResult r = mode == 0 ? rigidity_trial(model, A, D, s.child("map"))
                                       : rigidity_check(model, identity_map(model), A, D);
    return r.verdict == RigidityVerdict::kViolation;
  };
  return e;
}

// Success: a relation of degree <= d and height <= H among branch values
// 0000, 1110, 0001, 1111 (first edge = lowest bit) of one depth-4 tree.
Experiment independence_experiment(const ExperimentParams& params) {
  const auto p = static_cast<std::uint64_t>(as_long(params, "p", 7));
  const int depth = static_cast<int>(as_long(params, "depth", 4));
  const int d = static_cast<int>(as_long(params, "d", 2));
  const long H = as_long(params, "H", 10);
  if (depth < 1 || depth > 20) fail(ErrorCode::kParameter, "independence experiment: depth must lie in [1, 20]");
  const std::uint64_t ones = (std::uint64_t{1} << depth) - 1;
  const std::vector<std::uint64_t> branches{0, ones - 1, 1, ones};
  Experiment e;
  e.trial = [=](const Seed& s) {
    const auto tree = sample_tree(p, depth, s);
    std::vector<PadicApprox> xs;
    for (auto f : branches) xs.push_back(xi_of_branch(tree, BitSequence{depth, f}));
    return find_relation(xs, d, H).found;
  };
  return e;
}

ExperimentRegistry build_registry() {
  ExperimentRegistry r;
  r.add("gl", gl_experiment);
  r.add("containment", containment_experiment);
  r.add("rigidity", rigidity_experiment);
  r.add("independence", independence_experiment);
  return r;
}

}  // namespace

const ExperimentRegistry& default_registry() {
  static const ExperimentRegistry registry = build_registry();
  return registry;
}

}  // namespace padic_rigid
