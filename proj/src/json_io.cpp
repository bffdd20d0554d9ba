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

#include "padic_rigid/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "padic_rigid/errors.hpp"

namespace padic_rigid {
namespace {

std::string str(const mpz_class& x) { return x.get_str(); }
std::string str(const mpq_class& x) { return x.get_str(); }

mpz_class integer_of(const Json& j, const char* what) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    mpz_class out;
    if (out.set_str(j.get<std::string>(), 10) == 0) return out;
  }
  fail(ErrorCode::kInput, std::string("expected an integer for ") + what);
}

Json element_json(const RingElement& a) {
  Json out = Json::array();
  for (const auto& x : a) out.push_back(str(x));
  return out;
}

Json integers_json(const std::vector<mpz_class>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(str(x));
  return out;
}

}  // namespace

std::string decimal(const mpq_class& q, int digits) {
  mpf_class f(q, 256);
  std::ostringstream os;
  os.precision(digits);
  os << f;
  return os.str();
}

RingPresentation ring_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::kInput, "ring presentation must be a JSON object");
  for (const char* key : {"rank", "structure", "identity"}) {
    if (!j.contains(key)) fail(ErrorCode::kInput, std::string("ring presentation lacks '") + key + "'");
  }
  RingPresentation r;
  r.name = j.value("name", std::string("ring"));
  const mpz_class rank = integer_of(j["rank"], "rank");
  if (rank < 1 || rank > static_cast<long>(kMaxRingRank)) fail(ErrorCode::kInput, "ring rank must lie in [1, 16]");
  r.rank = rank.get_ui();
  const Json& s = j["structure"];
  if (!s.is_array() || s.size() != r.rank) fail(ErrorCode::kInput, "structure must be an n x n x n array");
  r.structure.resize(r.rank);
  for (std::size_t a = 0; a < r.rank; ++a) {
    if (!s[a].is_array() || s[a].size() != r.rank) fail(ErrorCode::kInput, "structure must be an n x n x n array");
    r.structure[a].resize(r.rank);
    for (std::size_t b = 0; b < r.rank; ++b) {
      if (!s[a][b].is_array() || s[a][b].size() != r.rank) {
        fail(ErrorCode::kInput, "structure must be an n x n x n array");
      }
      for (std::size_t c = 0; c < r.rank; ++c) r.structure[a][b].push_back(integer_of(s[a][b][c], "structure constant"));
    }
  }
  const Json& u = j["identity"];
  if (!u.is_array()) fail(ErrorCode::kInput, "identity must be an array");
  for (const auto& x : u) r.identity.push_back(integer_of(x, "identity coordinate"));
  return r;
}

Json ring_to_json(const RingPresentation& ring) {
  Json s = Json::array();
  for (const auto& plane : ring.structure) {
    Json rows = Json::array();
    for (const auto& row : plane) {
      Json cells = Json::array();
      for (const auto& c : row) cells.push_back(c.get_si());
      rows.push_back(cells);
    }
    s.push_back(rows);
  }
  Json identity = Json::array();
  for (const auto& x : ring.identity) identity.push_back(x.get_si());
  return Json{{"name", ring.name}, {"rank", ring.rank}, {"structure", s}, {"identity", identity}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kUsage, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

RingPresentation load_ring(const std::string& path) { return ring_from_json(read_json_file(path)); }

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::kResource, "cannot write '" + tmp + "'");
    out << content;
    out.flush();
    if (!out) fail(ErrorCode::kResource, "write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    fail(ErrorCode::kResource, "cannot rename onto '" + path + "'");
  }
}

Json to_json(const PadicApprox& x) {
  return Json{{"p", x.p()}, {"precision", x.precision()}, {"residue", str(x.residue())}};
}

Json to_json(const PadicVector& v) {
  Json entries = Json::object();
  for (const auto& [i, value] : v.entries()) entries[std::to_string(i)] = str(value);
  return Json{{"p", v.p()}, {"precision", v.precision()}, {"entries", entries}};
}

Json to_json(const TreeCoefficients& t) {
  Json levels = Json::array();
  for (const auto& level : t.levels()) levels.push_back(integers_json(level));
  return Json{{"p", t.p()}, {"depth", t.depth()}, {"levels", levels}};
}

Json to_json(const RelationReport& r) {
  Json out{{"found", r.found},
           {"p", r.p},
           {"precision", r.precision},
           {"degree_bound", r.degree_bound},
           {"height_bound", r.height_bound},
           {"monomials", r.monomials},
           {"enumeration_nodes", r.nodes}};
  out["witness"] = r.witness ? Json(r.witness->to_string()) : Json(nullptr);
  return out;
}

Json to_json(const IndependenceVerdict& v) {
  Json out{{"independent", v.independent}, {"pivot_valuations", v.pivot_valuations}};
  out["witness"] = v.witness ? integers_json(*v.witness) : Json(nullptr);
  return out;
}

Json to_json(const ContainmentReport& r) {
  Json basis = Json::array();
  for (const auto& b : r.basis) basis.push_back(to_json(b));
  mpq_class freq(static_cast<unsigned long>(r.hits), static_cast<unsigned long>(std::max<std::uint64_t>(r.trials, 1)));
  freq.canonicalize();
  Json out{{"p", r.p},
           {"k", r.k},
           {"n", r.n},
           {"alpha", r.alpha},
           {"trials", r.trials},
           {"hits", r.hits},
           {"seed", r.seed},
           {"frequency", r.trials ? Json(str(freq)) : Json(nullptr)},
           {"frequency_decimal", r.trials ? Json(r.frequency()) : Json(nullptr)},
           {"bound_decimal", r.bound},
           {"sigma_decimal", r.sigma},
           {"within_bound", r.within_bound()},
           {"basis", basis}};
  if (r.exact_k0) out["exact_k0"] = str(*r.exact_k0);
  return out;
}

Json to_json(const FreeCheckReport& r) {
  return Json{{"p", r.p},
              {"precision", r.precision},
              {"alpha", r.alpha},
              {"rank_window", r.window},
              {"num_random", r.m},
              {"denominator_cap", (r.precision - 1) / 2},
              {"trials", r.trials},
              {"seed", r.seed},
              {"independent", r.independent},
              {"basis_full_rank", r.basis_full_rank},
              {"basis_failed", r.basis_failed},
              {"independent_fraction_decimal",
               r.trials ? Json(static_cast<double>(r.independent) / static_cast<double>(r.trials)) : Json(nullptr)}};
}

Json to_json(const ZassenhausDatum& d) {
  return Json{{"p", d.p},         {"a", element_json(d.a)}, {"c", str(d.c)},    {"r", d.r},
              {"d", str(d.d)},    {"order", str(d.order)},  {"inert", d.inert}};
}

Json to_json(const ConstructionReport& r) {
  Json sampled = Json::array();
  for (const auto& d : r.sampled) sampled.push_back(to_json(d));
  Json deterministic = Json::array();
  for (const auto& d : r.deterministic) deterministic.push_back(to_json(d));
  Json pairs = Json::array();
  for (const auto& o : r.pairs) {
    Json item{{"a", element_json(o.a)},
              {"e", element_json(o.e)},
              {"f", o.f},
              {"exceptional_primes", integers_json(o.exceptional_primes)},
              {"scan_primes", o.scan_primes}};
    item["sampled_prime"] = o.sampled_prime ? Json(*o.sampled_prime) : Json(nullptr);
    item["deterministic_prime"] =
        o.deterministic_datum ? Json(r.deterministic[*o.deterministic_datum].p) : Json(nullptr);
    item["status"] = o.budget_exhausted ? "budget-exhausted" : "verified";
    pairs.push_back(item);
  }
  return Json{{"ring", r.ring},
              {"budget", r.budget},
              {"box", r.box},
              {"seed", r.seed},
              {"sampled_enabled", r.sampled_enabled},
              {"skipped", r.skipped},
              {"sampled", sampled},
              {"deterministic", deterministic},
              {"pairs", pairs}};
}

Json to_json(const DensityReport& r) {
  Json decades = Json::array();
  for (const auto& d : r.decades) {
    decades.push_back(Json{{"bound", d.bound},
                           {"primes_scanned", d.primes_scanned},
                           {"primes_with_root", d.primes_with_root},
                           {"reciprocal_sum", str(d.reciprocal_sum)},
                           {"reciprocal_sum_decimal", decimal(d.reciprocal_sum)}});
  }
  return Json{{"polynomial", r.polynomial},
              {"bound", r.bound},
              {"primes_scanned", r.primes_scanned},
              {"primes_with_root", r.primes_with_root},
              {"density", str(r.density)},
              {"density_decimal", decimal(r.density)},
              {"reciprocal_sum", str(r.reciprocal_sum)},
              {"reciprocal_sum_decimal", decimal(r.reciprocal_sum)},
              {"decades", decades}};
}

Json to_json(const TrialSummary& s) {
  const auto f = s.frequency();
  const auto z = s.z_score();
  Json out{{"experiment", s.experiment}, {"trials", s.trials}, {"successes", s.successes}};
  out["frequency"] = f ? Json(str(*f)) : Json(nullptr);
  out["frequency_decimal"] = f ? Json(f->get_d()) : Json(nullptr);
  out["target"] = s.target ? Json(str(*s.target)) : Json(nullptr);
  out["target_decimal"] = s.target ? Json(s.target->get_d()) : Json(nullptr);
  out["z_score"] = z ? Json(*z) : Json(nullptr);
  out["within_three_sigma"] = s.target && f ? Json(s.within_three_sigma()) : Json(nullptr);
  return out;
}

Json to_json(const CornerModel& m) {
  Json generators = Json::array();
  for (const auto& g : m.generators) {
    Json xi = Json::array();
    for (const auto& realization : g.xi) {
      Json coeffs = Json::object();
      for (const auto& [b, x] : realization) coeffs[std::to_string(b)] = str(x.residue());
      xi.push_back(coeffs);
    }
    generators.push_back(Json{{"n", g.n}, {"label", g.label}, {"support", g.support}, {"coefficients", xi}});
  }
  const auto& p = m.params;
  return Json{{"ring", ring_to_json(m.ring)},
              {"p", p.p},
              {"precision", p.precision},
              {"denominator_cap", p.denominator_cap},
              {"window", p.window},
              {"labels", p.labels},
              {"per_label", p.per_label},
              {"realizations", p.realizations},
              {"seed", m.seed},
              {"tree_depth", m.tree_depth},
              {"generators", generators}};
}

CornerModel corner_model_from_json(const Json& j) {
  try {
    CornerParams p;
    p.p = j.at("p").get<std::uint64_t>();
    p.precision = j.at("precision").get<int>();
    p.denominator_cap = j.at("denominator_cap").get<int>();
    p.window = j.at("window").get<std::size_t>();
    p.labels = j.at("labels").get<std::size_t>();
    p.per_label = j.at("per_label").get<std::size_t>();
    p.realizations = j.at("realizations").get<std::size_t>();
    CornerModel m = build_corner_model(ring_from_json(j.at("ring")), p, j.at("seed").get<std::uint64_t>());
    const Json& gens = j.at("generators");
    if (gens.size() != m.generators.size()) fail(ErrorCode::kInput, "corner model: generator count mismatch");
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const Json& xi = gens[g].at("coefficients");
      if (xi.size() != m.generators[g].xi.size()) fail(ErrorCode::kInput, "corner model: realization count mismatch");
      for (std::size_t t = 0; t < xi.size(); ++t) {
        for (const auto& [b, x] : m.generators[g].xi[t]) {
          if (integer_of(xi[t].at(std::to_string(b)), "coefficient") != x.residue()) {
            fail(ErrorCode::kInput, "corner model: stored coefficients differ from the seeded rebuild");
          }
        }
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kInput, std::string("corner model JSON: ") + e.what());
  }
}

Json to_json(const MembershipResult& r) {
  Json out{{"verdict", r.verdict == MembershipVerdict::kInAtPrecision ? "InAtPrecision" : "NotIn"}};
  out["k"] = r.k ? Json(*r.k) : Json(nullptr);
  return out;
}

Json to_json(const RigidityResult& r) {
  Json out{{"verdict", r.verdict == RigidityVerdict::kViolation ? "Violation" : "Consistent"}};
  out["failing_generator"] = r.failing_generator ? Json(*r.failing_generator) : Json(nullptr);
  return out;
}

std::string density_csv(const DensityReport& r) {
  std::ostringstream os;
  os << "bound,primes_scanned,primes_with_root,reciprocal_sum,reciprocal_sum_decimal\n";
  for (const auto& d : r.decades) {
    os << d.bound << ',' << d.primes_scanned << ',' << d.primes_with_root << ',' << str(d.reciprocal_sum) << ','
       << decimal(d.reciprocal_sum) << '\n';
  }
  return os.str();
}

std::string trial_summary_csv(const TrialSummary& s) {
  std::ostringstream os;
  const auto f = s.frequency();
  os << "experiment,trials,successes,frequency,target\n";
  os << s.experiment << ',' << s.trials << ',' << s.successes << ',' << (f ? str(*f) : "") << ','
     << (s.target ? str(*s.target) : "") << '\n';
  return os.str();
}

}  // namespace padic_rigid
