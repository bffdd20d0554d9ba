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

#include "padic_rigid/corner.hpp"

#include <algorithm>
#include <string>

#include "padic_rigid/errors.hpp"
#include "padic_rigid/modpn_linear.hpp"

namespace padic_rigid {
namespace {

constexpr std::size_t kExcludedSamples = 16;
constexpr long kExcludedBox = 3;

void check_model_vector(const CornerModel& model, const ModelVector& x) {
  if (x.size() != model.params.realizations) {
    fail(ErrorCode::kArity, "model vector has " + std::to_string(x.size()) + " realizations, expected " +
                                std::to_string(model.params.realizations));
  }
  for (const auto& v : x) {
    if (v.p() != model.params.p || v.precision() != model.params.precision) {
      fail(ErrorCode::kIncompatibleOperands, "model vector precision or prime differs from the model");
    }
    if (v.extent() > model.abelian_rank()) fail(ErrorCode::kOutOfRange, "model vector leaves the basis window");
  }
}

void check_labels(const CornerModel& model, const std::set<std::size_t>& labels) {
  for (auto a : labels) {
    if (a >= model.params.labels) fail(ErrorCode::kOutOfRange, "label " + std::to_string(a) + " not in model");
  }
}

// Left multiplication by r on one R-block: out_k = sum_j M[k][j] v_j.
IntMatrix left_matrix(const CornerModel& model, const RingElement& r) {
  if (r.size() != model.ring.rank) fail(ErrorCode::kArity, "ring element has wrong rank");
  return regular_rep(model.ring, r);
}

PadicVector act_blockwise(const CornerModel& model, const IntMatrix& m, const PadicVector& v) {
  const std::size_t n = model.ring.rank;
  PadicVector out(v.params());
  for (const auto& [idx, value] : v.entries()) {
    const std::size_t b = idx / n, j = idx % n;
    for (std::size_t k = 0; k < n; ++k) {
      if (m[k][j] != 0) out.add_to(b * n + k, m[k][j] * value);
    }
  }
  return out;
}

// Linear system z + sum_j r_j a_j over the generators with labels in A.
class MembershipSystem {
 public:
  MembershipSystem(const CornerModel& model, const std::set<std::size_t>& A) : model_(model) {
    check_labels(model, A);
    const std::size_t W = model.abelian_rank();
    const std::size_t T = model.params.realizations;
    const std::size_t n = model.ring.rank;
    std::vector<IntMatrix> basis_action;
    for (std::size_t s = 0; s < n; ++s) {
      RingElement e(n, 0);
      e[s] = 1;
      basis_action.push_back(left_matrix(model, e));
    }
    std::vector<std::size_t> gens;
    for (std::size_t g = 0; g < model.generators.size(); ++g) {
      if (A.count(model.generators[g].label)) gens.push_back(g);
    }
    cols_ = W + n * gens.size();
    ModMatrix a(T * W, std::vector<mpz_class>(cols_, 0));
    for (std::size_t t = 0; t < T; ++t) {
      for (std::size_t i = 0; i < W; ++i) a[t * W + i][i] = 1;
      for (std::size_t j = 0; j < gens.size(); ++j) {
        for (std::size_t s = 0; s < n; ++s) {
          const PadicVector col = act_blockwise(model, basis_action[s], model.values[gens[j]][t]);
          for (const auto& [idx, value] : col.entries()) a[t * W + idx][W + j * n + s] = value;
        }
      }
    }
    system_.emplace(model.params.p, model.params.precision, a, cols_);
  }

  MembershipResult decide(const ModelVector& x, int cap) const {
    check_model_vector(model_, x);
    const std::size_t W = model_.abelian_rank();
    std::vector<mpz_class> rhs(model_.params.realizations * W, 0);
    for (std::size_t t = 0; t < x.size(); ++t) {
      for (const auto& [idx, value] : x[t].entries()) rhs[t * W + idx] = value;
    }
    const mpz_class& modulus = system_->modulus();
    const auto p = static_cast<unsigned long>(model_.params.p);
    for (int k = 0; k <= cap; ++k) {
      if (system_->solve(rhs)) return {MembershipVerdict::kInAtPrecision, k};
      for (auto& v : rhs) {
        v *= p;
        mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
      }
    }
    return {MembershipVerdict::kNotIn, std::nullopt};
  }

 private:
  const CornerModel& model_;
  std::size_t cols_ = 0;
  std::optional<ModPNSystem> system_;
};

bool same_images(const AdditiveMap& a, const AdditiveMap& b) {
  return a.images == b.images;
}

}  // namespace

PadicParamsPtr CornerModel::padic() const { return make_padic_params(params.p, params.precision); }

PadicVector build_generator(const RingPresentation& ring, const SupportedElement& se, std::size_t window,
                            int precision) {
  validate_supported_element(se);
  const auto& first = se.coefficients.begin()->second;
  auto params = make_padic_params(first.p(), precision);
  PadicVector out(params);
  const std::size_t n = ring.rank;
  for (const auto& [b, xi] : se.coefficients) {
    if (b >= window) fail(ErrorCode::kOutOfRange, "support index " + std::to_string(b) + " outside the window");
    if (xi.p() != first.p()) fail(ErrorCode::kIncompatibleOperands, "coefficients use different primes");
    if (xi.precision() < precision) {
      fail(ErrorCode::kIncompatibleOperands, "coefficient precision below the requested precision");
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (ring.identity[t] != 0) out.add_to(b * n + t, ring.identity[t] * xi.residue());
    }
  }
  return out;
}

int corner_tree_depth(int precision) {
  if (precision < 1) fail(ErrorCode::kParameter, "precision must be positive");
  int depth = 0;
  while (tree_precision(depth) < precision) ++depth;
  return depth;
}

CornerModel build_corner_model(const RingPresentation& ring, const CornerParams& params, std::uint64_t seed) {
  require_valid(ring);
  if (!is_prime_u64(params.p)) fail(ErrorCode::kParameter, "corner model: p must be prime");
  if (params.denominator_cap < 0) fail(ErrorCode::kParameter, "corner model: K must be non-negative");
  if (params.labels == 0) fail(ErrorCode::kParameter, "corner model: labels must be non-empty");
  if (params.window == 0 || params.per_label == 0 || params.realizations == 0) {
    fail(ErrorCode::kParameter, "corner model: window, generators per label and realizations must be positive");
  }
  if (params.precision > 200) fail(ErrorCode::kParameter, "corner model: precision above 200");
  CornerModel model;
  model.ring = ring;
  model.params = params;
  model.seed = seed;
  model.tree_depth = corner_tree_depth(params.precision);
  if (model.tree_depth >= 63 || params.labels > (std::size_t{1} << model.tree_depth)) {
    fail(ErrorCode::kParameter, "corner model: more labels than tree branches at this precision");
  }
  const Seed root(seed);
  const auto T = params.realizations;

  for (std::size_t n = 0; n < params.per_label; ++n) {
    const auto support = sample_support(params.window, root.path("support", static_cast<std::int64_t>(n)));
    // trees[b][t]
    std::map<std::size_t, std::vector<TreeCoefficients>> trees;
    for (auto b : support) {
      for (std::size_t t = 0; t < T; ++t) {
        trees[b].push_back(sample_tree(params.p, model.tree_depth,
                                       root.path("tree", static_cast<std::int64_t>(n), static_cast<std::int64_t>(b),
                                                 static_cast<std::int64_t>(t))));
      }
    }
    for (std::size_t alpha = 0; alpha < params.labels; ++alpha) {
      CornerGenerator g;
      g.n = n;
      g.label = alpha;
      g.support = support;
      g.xi.resize(T);
      ModelVector value;
      const BitSequence branch{model.tree_depth, static_cast<std::uint64_t>(alpha)};
      for (std::size_t t = 0; t < T; ++t) {
        SupportedElement se;
        se.index = n;
        se.label = alpha;
        se.support = support;
        for (auto b : support) {
          se.coefficients.emplace(b, reduce_precision(xi_of_branch(trees[b][t], branch), params.precision));
        }
        value.push_back(build_generator(ring, se, params.window, params.precision));
        g.xi[t] = std::move(se.coefficients);
      }
      model.generators.push_back(std::move(g));
      model.values.push_back(std::move(value));
    }
  }
  return model;
}

ModelVector constant_vector(const CornerModel& model, const PadicVector& x) {
  if (x.p() != model.params.p || x.precision() != model.params.precision) {
    fail(ErrorCode::kIncompatibleOperands, "vector precision or prime differs from the model");
  }
  return ModelVector(model.params.realizations, x);
}

ModelVector ring_act(const CornerModel& model, const RingElement& r, const ModelVector& x) {
  check_model_vector(model, x);
  const IntMatrix m = left_matrix(model, r);
  ModelVector out;
  for (const auto& v : x) out.push_back(act_blockwise(model, m, v));
  return out;
}

ModelVector model_add(const ModelVector& x, const ModelVector& y) {
  if (x.size() != y.size()) fail(ErrorCode::kArity, "model vectors have different realization counts");
  ModelVector out;
  for (std::size_t t = 0; t < x.size(); ++t) out.push_back(vadd(x[t], y[t]));
  return out;
}

MembershipResult membership(const ModelVector& x, const CornerModel& model, const std::set<std::size_t>& A,
                            std::optional<int> cap) {
  const int k = cap.value_or(model.params.denominator_cap);
  if (k < 0) fail(ErrorCode::kParameter, "membership: cap must be non-negative");
  return MembershipSystem(model, A).decide(x, k);
}

MembershipResult membership(const PadicVector& x, const CornerModel& model, const std::set<std::size_t>& A,
                            std::optional<int> cap) {
  return membership(constant_vector(model, x), model, A, cap);
}

bool mult_by_r_probe(const RingElement& r, const CornerModel& model, const std::set<std::size_t>& A) {
  const MembershipSystem system(model, A);
  const int K = model.params.denominator_cap;
  const auto params = model.padic();
  for (std::size_t i = 0; i < model.abelian_rank(); ++i) {
    const ModelVector e = constant_vector(model, PadicVector::basis(params, i));
    if (system.decide(ring_act(model, r, e), K).verdict == MembershipVerdict::kNotIn) return false;
  }
  for (std::size_t g = 0; g < model.generators.size(); ++g) {
    if (!A.count(model.generators[g].label)) continue;
    if (system.decide(ring_act(model, r, model.values[g]), K).verdict == MembershipVerdict::kNotIn) return false;
  }
  return true;
}

AdditiveMap identity_map(const CornerModel& model) {
  AdditiveMap phi;
  const auto params = model.padic();
  for (std::size_t i = 0; i < model.abelian_rank(); ++i) phi.images.push_back(PadicVector::basis(params, i));
  return phi;
}

AdditiveMap multiplication_map(const CornerModel& model, const RingElement& r) {
  const IntMatrix m = left_matrix(model, r);
  AdditiveMap phi;
  const auto params = model.padic();
  for (std::size_t i = 0; i < model.abelian_rank(); ++i) {
    phi.images.push_back(act_blockwise(model, m, PadicVector::basis(params, i)));
  }
  return phi;
}

AdditiveMap random_additive_map(const CornerModel& model, const Seed& seed,
                                const std::vector<RingElement>& excluded) {
  std::vector<AdditiveMap> forbidden;
  for (const auto& r : excluded) forbidden.push_back(multiplication_map(model, r));
  const auto params = model.padic();
  SeedStream stream(seed);
  for (;;) {
    AdditiveMap phi;
    for (std::size_t i = 0; i < model.abelian_rank(); ++i) {
      PadicVector v(params);
      for (std::size_t j = 0; j < model.abelian_rank(); ++j) {
        v.set(j, stream.uniform_digits(model.params.p, model.params.precision));
      }
      phi.images.push_back(std::move(v));
    }
    const bool hit = std::any_of(forbidden.begin(), forbidden.end(),
                                 [&](const AdditiveMap& f) { return same_images(f, phi); });
    if (!hit) return phi;
  }
}

ModelVector apply_map(const CornerModel& model, const AdditiveMap& phi, const ModelVector& x) {
  check_model_vector(model, x);
  if (phi.images.size() != model.abelian_rank()) fail(ErrorCode::kArity, "map does not cover the window");
  ModelVector out;
  for (const auto& v : x) {
    PadicVector y(v.params());
    for (const auto& [i, coeff] : v.entries()) y = vadd(y, vscale(phi.images[i], coeff));
    out.push_back(std::move(y));
  }
  return out;
}

RigidityResult rigidity_check(const CornerModel& model, const AdditiveMap& phi, const std::set<std::size_t>& A,
                              const std::set<std::size_t>& D) {
  check_labels(model, A);
  const MembershipSystem system(model, D);
  for (std::size_t g = 0; g < model.generators.size(); ++g) {
    if (!A.count(model.generators[g].label)) continue;
    const ModelVector image = apply_map(model, phi, model.values[g]);
    if (system.decide(image, model.params.denominator_cap).verdict == MembershipVerdict::kNotIn) {
      return {RigidityVerdict::kViolation, g};
    }
  }
  return {RigidityVerdict::kConsistent, std::nullopt};
}

RigidityResult rigidity_trial(const CornerModel& model, const std::set<std::size_t>& A,
                              const std::set<std::size_t>& D, const Seed& seed) {
  const std::size_t n = model.ring.rank;
  std::vector<RingElement> excluded{RingElement(n, 0), model.ring.identity};
  SeedStream stream(seed.child("excluded"));
  for (std::size_t i = 0; i < kExcludedSamples; ++i) {
    RingElement r(n);
    for (auto& x : r) x = static_cast<long>(stream.uniform_range(-kExcludedBox, kExcludedBox));
    excluded.push_back(std::move(r));
  }
  return rigidity_check(model, random_additive_map(model, seed.child("map"), excluded), A, D);
}

std::vector<std::pair<std::set<std::size_t>, std::set<std::size_t>>> label_pairs(std::size_t labels,
                                                                                  bool a_subset_of_d) {
  if (labels == 0 || labels > 16) fail(ErrorCode::kParameter, "label_pairs: label count must lie in [1, 16]");
  auto subset = [](std::uint64_t mask) {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < 64; ++i) {
      if ((mask >> i) & 1U) s.insert(i);
    }
    return s;
  };
  std::vector<std::pair<std::set<std::size_t>, std::set<std::size_t>>> out;
  const std::uint64_t full = (std::uint64_t{1} << labels);
  for (std::uint64_t a = 1; a < full; ++a) {
    for (std::uint64_t d = 0; d < full; ++d) {
      const bool inside = (a & ~d) == 0;
      if (inside == a_subset_of_d) out.emplace_back(subset(a), subset(d));
    }
  }
  return out;
}

}  // namespace padic_rigid
