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

#include "padic_rigid/zassenhaus.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "padic_rigid/errors.hpp"
#include "padic_rigid/padic.hpp"
#include "padic_rigid/prime_density.hpp"

namespace padic_rigid {
namespace {

bool is_zero(const RingElement& a) {
  return std::all_of(a.begin(), a.end(), [](const mpz_class& x) { return x == 0; });
}

bool in_box(const RingElement& a, long H) {
  return std::all_of(a.begin(), a.end(), [H](const mpz_class& x) { return abs(x) <= H; });
}

RingElement c_minus_a(const RingPresentation& ring, const mpz_class& c, const RingElement& a) {
  return ring_sub(ring_scalar(ring, c), a);
}

RingElement draw_nonzero(const RingPresentation& ring, long H, SeedStream& stream) {
  RingElement a(ring.rank);
  do {
    for (auto& x : a) x = static_cast<long>(stream.uniform_range(-H, H));
  } while (is_zero(a));
  return a;
}

mpz_class pow_ui(std::uint64_t p, int e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

// p^{-r}(c - a) as a rational ring element.
RationalVector generator(const RingPresentation& ring, const ZassenhausDatum& d) {
  RationalVector g = to_rational(c_minus_a(ring, d.c, d.a));
  const mpz_class pr = pow_ui(d.p, d.r);
  for (auto& x : g) {
    x /= pr;
    x.canonicalize();
  }
  return g;
}

RationalVector radd(RationalVector a, const RationalVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] += b[i];
    a[i].canonicalize();
  }
  return a;
}

RationalVector rscale(RationalVector a, const mpq_class& s) {
  for (auto& x : a) {
    x *= s;
    x.canonicalize();
  }
  return a;
}

}  // namespace

ZassenhausDatum complete_datum(const RingPresentation& ring, std::uint64_t p, const RingElement& a,
                               const mpz_class& c) {
  if (!is_prime_u64(p)) fail(ErrorCode::kParameter, "complete_datum: p must be prime");
  const RationalVector inv = invert_in_QA(ring, c_minus_a(ring, c, a));
  ZassenhausDatum d;
  d.p = p;
  d.a = a;
  d.c = c;
  d.order = order_in_QA_mod_A(inv);
  const int v = p_valuation(d.order, p);
  d.r = std::max(v, 1);
  d.d = d.order / pow_ui(p, v);
  d.inert = v == 0;
  if (!is_integral(rscale(inv, mpq_class(pow_ui(p, d.r) * d.d)))) {
    fail(ErrorCode::kInternal, "complete_datum: p^r d (c - a)^{-1} is not integral");
  }
  return d;
}

std::pair<RingElement, mpz_class> draw_datum(const RingPresentation& ring, std::uint64_t p, long H,
                                             const Seed& seed) {
  if (H < 1) fail(ErrorCode::kParameter, "draw_datum: box bound H must be at least 1");
  SeedStream stream(seed);
  RingElement a = draw_nonzero(ring, H, stream);
  const auto pi = static_cast<std::int64_t>(p);
  const mpz_class c = static_cast<long>(stream.uniform_range(pi, 2 * pi - 1));
  return {std::move(a), c};
}

std::optional<ZassenhausDatum> sample_datum(const RingPresentation& ring, std::uint64_t p, long H,
                                            const Seed& seed) {
  auto [a, c] = draw_datum(ring, p, H, seed);
  try {
    return complete_datum(ring, p, a, c);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNonInvertible) return std::nullopt;
    throw;
  }
}

bool verify_pair(const RingPresentation& ring, const RingElement& a, const RingElement& e,
                 const ZassenhausDatum& datum) {
  if (is_zero(e)) fail(ErrorCode::kParameter, "verify_pair: e must be non-zero");
  if (datum.a != a) return false;
  const RationalVector inv = invert_in_QA(ring, c_minus_a(ring, datum.c, a));
  const mpz_class m = order_in_QA_mod_A(ring_mul(ring, inv, to_rational(e)));
  return mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(datum.p)) != 0;
}

std::vector<std::pair<RingElement, RingElement>> sample_pairs(const RingPresentation& ring, long H,
                                                              std::size_t count, const Seed& seed) {
  std::vector<std::pair<RingElement, RingElement>> out;
  for (std::size_t i = 0; i < count; ++i) {
    SeedStream stream(seed.path("pair", static_cast<std::int64_t>(i)));
    RingElement a = draw_nonzero(ring, H, stream);
    RingElement e = draw_nonzero(ring, H, stream);
    out.emplace_back(std::move(a), std::move(e));
  }
  return out;
}

ConstructionReport realize(const RingPresentation& ring,
                           const std::vector<std::pair<RingElement, RingElement>>& pairs,
                           const RealizeOptions& options) {
  require_valid(ring);
  if (options.budget < 2) fail(ErrorCode::kParameter, "realize: prime budget must be at least 2");
  if (options.box < 1) fail(ErrorCode::kParameter, "realize: box bound must be at least 1");
  for (const auto& [a, e] : pairs) {
    if (a.size() != ring.rank || e.size() != ring.rank) fail(ErrorCode::kArity, "realize: pair has wrong rank");
    if (is_zero(a) || is_zero(e)) fail(ErrorCode::kParameter, "realize: pair elements must be non-zero");
    if (!in_box(a, options.box) || !in_box(e, options.box)) {
      fail(ErrorCode::kParameter, "realize: pair coordinates exceed the box bound");
    }
  }
  const auto primes = primes_up_to(options.budget);
  const Seed root(options.seed);

  ConstructionReport report;
  report.ring = ring.name;
  report.budget = options.budget;
  report.box = options.box;
  report.seed = options.seed;
  report.sampled_enabled = !options.deterministic_only;
  if (report.sampled_enabled) {
    for (std::uint64_t p : primes) {
      auto d = sample_datum(ring, p, options.box, root.path("zassenhaus", static_cast<std::int64_t>(p)));
      if (d) {
        report.sampled.push_back(std::move(*d));
      } else {
        ++report.skipped;
      }
    }
  }

  std::set<std::uint64_t> used;
  for (const auto& [a, e] : pairs) {
    PairOutcome out;
    out.a = a;
    out.e = e;
    for (const auto& d : report.sampled) {
      if (verify_pair(ring, a, e, d)) {
        out.sampled_prime = d.p;
        break;
      }
    }
    const DenominatorData dd = denominator_polynomial(ring, a, e);
    out.f = dense::to_string(dd.f, 'c');
    out.exceptional_primes = dd.exceptional_primes;
    const DensePoly chi = denominator_polynomial(ring, a, ring.identity).characteristic;
    for (std::uint64_t p : primes) {
      if (dd.is_exceptional(p)) continue;
      // Roots c0 in [0, p) lift to c = c0 + p in [p, 2p - 1].
      for (std::uint64_t c0 : roots_mod_p(dd.f, p)) {
        const mpz_class c = static_cast<unsigned long>(c0 + p);
        if (dense::eval(chi, c) == 0) continue;
        ZassenhausDatum datum = complete_datum(ring, p, a, c);
        if (!verify_pair(ring, a, e, datum)) continue;
        out.scan_primes.push_back(p);
        if (!out.deterministic_datum && !used.count(p)) {
          used.insert(p);
          out.deterministic_datum = report.deterministic.size();
          report.deterministic.push_back(std::move(datum));
        }
        break;
      }
    }
    out.budget_exhausted = !out.sampled_prime && !out.deterministic_datum;
    report.pairs.push_back(std::move(out));
  }
  return report;
}

bool order_condition_check(const RingPresentation& ring, const std::vector<ZassenhausDatum>& data,
                           const RationalVector& m, std::size_t i, const OrderCertificate& cert) {
  if (i >= data.size()) fail(ErrorCode::kOutOfRange, "order_condition_check: datum index out of range");
  if (m.size() != ring.rank || cert.a.size() != ring.rank) {
    fail(ErrorCode::kArity, "order_condition_check: element has wrong rank");
  }
  for (const auto& [j, b] : cert.b) {
    if (j >= data.size()) fail(ErrorCode::kInput, "order_condition_check: certificate names an unknown datum");
    if (b.size() != ring.rank) fail(ErrorCode::kArity, "order_condition_check: b_j has wrong rank");
  }
  const ZassenhausDatum& di = data[i];

  // Certificate identity.
  const RationalVector lhs = ring_mul(ring, generator(ring, di), m);
  RationalVector rhs = to_rational(cert.a);
  for (const auto& [j, b] : cert.b) rhs = radd(rhs, ring_mul(ring, generator(ring, data[j]), to_rational(b)));
  if (lhs != rhs) fail(ErrorCode::kInput, "order_condition_check: certificate sides differ");

  // Left multiplication by a~ = p^r d (c - a)^{-1}.
  const RationalVector inv = invert_in_QA(ring, c_minus_a(ring, di.c, di.a));
  const RationalVector tilde = rscale(inv, mpq_class(pow_ui(di.p, di.r) * di.d));
  if (!is_integral(tilde)) fail(ErrorCode::kInput, "order_condition_check: datum violates integrality");
  RationalVector dm_rhs = ring_mul(ring, tilde, to_rational(cert.a));
  for (const auto& [j, b] : cert.b) {
    if (j == i) {
      dm_rhs = radd(dm_rhs, rscale(to_rational(b), mpq_class(di.d)));
    } else {
      dm_rhs = radd(dm_rhs, ring_mul(ring, ring_mul(ring, tilde, generator(ring, data[j])), to_rational(b)));
    }
  }
  if (dm_rhs != rscale(m, mpq_class(di.d))) {
    fail(ErrorCode::kInternal, "order_condition_check: multiplied identity does not hold");
  }
  const auto p = static_cast<unsigned long>(di.p);
  const mpz_class rhs_order = order_in_QA_mod_A(dm_rhs);
  const mpz_class m_order = order_in_QA_mod_A(m);
  return !mpz_divisible_ui_p(rhs_order.get_mpz_t(), p) && !mpz_divisible_ui_p(m_order.get_mpz_t(), p);
}

}  // namespace padic_rigid
