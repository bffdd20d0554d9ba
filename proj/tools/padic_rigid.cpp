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

#include <cstdint>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "padic_rigid/acceptance.hpp"
#include "padic_rigid/corner.hpp"
#include "padic_rigid/errors.hpp"
#include "padic_rigid/free_detector.hpp"
#include "padic_rigid/independence.hpp"
#include "padic_rigid/json_io.hpp"
#include "padic_rigid/prime_density.hpp"
#include "padic_rigid/random_padic.hpp"
#include "padic_rigid/ring_algebra.hpp"
#include "padic_rigid/stats.hpp"
#include "padic_rigid/zassenhaus.hpp"

using namespace padic_rigid;

namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  int precision = 0;  // 0: subcommand default
  std::string out;
  std::string format = "json";
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    write_atomic(cfg.out, text);
  }
}

void emit_json(const RunConfig& cfg, const Json& j) {
  if (cfg.format != "json") fail(ErrorCode::kUsage, "this subcommand only writes JSON");
  emit(cfg, j.dump(2) + "\n");
}

int precision_or(const RunConfig& cfg, int fallback) { return cfg.precision > 0 ? cfg.precision : fallback; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

mpz_class parse_integer(const std::string& s) {
  mpz_class x;
  if (x.set_str(s, 10) != 0) fail(ErrorCode::kUsage, "not an integer: '" + s + "'");
  return x;
}

RingElement parse_element(const std::string& s) {
  RingElement out;
  for (const auto& t : split(s, ',')) out.push_back(parse_integer(t));
  return out;
}

std::set<std::size_t> parse_labels(const std::string& s) {
  std::set<std::size_t> out;
  for (const auto& t : split(s, ',')) out.insert(parse_integer(t).get_ui());
  return out;
}

Json labels_json(const std::set<std::size_t>& s) { return Json(std::vector<std::size_t>(s.begin(), s.end())); }

// "i:v,i:v" sparse or "v0,v1,..." dense coordinates.
PadicVector parse_vector(const std::string& s, const PadicParamsPtr& params) {
  PadicVector v(params);
  std::size_t next = 0;
  for (const auto& t : split(s, ',')) {
    const auto colon = t.find(':');
    if (colon == std::string::npos) {
      v.set(next++, parse_integer(t));
    } else {
      v.set(parse_integer(t.substr(0, colon)).get_ui(), parse_integer(t.substr(colon + 1)));
    }
  }
  return v;
}

std::vector<std::pair<RingElement, RingElement>> load_pairs(const std::string& path) {
  const Json j = read_json_file(path);
  if (!j.is_array()) fail(ErrorCode::kInput, "pairs file must hold an array of {\"a\", \"e\"} objects");
  std::vector<std::pair<RingElement, RingElement>> out;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("a") || !item.contains("e")) {
      fail(ErrorCode::kInput, "pairs file entries need \"a\" and \"e\"");
    }
    const auto element = [](const Json& arr) {
      RingElement e;
      for (const auto& x : arr) e.push_back(x.is_string() ? mpz_class(x.get<std::string>()) : mpz_class(x.get<long>()));
      return e;
    };
    out.emplace_back(element(item["a"]), element(item["e"]));
  }
  return out;
}

Json sample_json(std::uint64_t p, int depth, int precision, const Seed& seed) {
  const TreeCoefficients tree = sample_tree(p, depth, seed.child("tree"));
  Json branches = Json::array();
  const int prec = std::min(precision, tree_precision(depth));
  for (std::uint64_t f = 0; f < (std::uint64_t{1} << depth); ++f) {
    const PadicApprox xi = reduce_precision(xi_of_branch(tree, BitSequence{depth, f}), prec);
    std::string bits;
    for (int k = 0; k < depth; ++k) bits += ((f >> k) & 1U) ? '1' : '0';
    branches.push_back(Json{{"branch", bits}, {"value", xi.residue().get_str()}});
  }
  const auto support = sample_support(0, seed.child("support"));
  return Json{{"p", p},
              {"depth", depth},
              {"precision", prec},
              {"seed", seed.key()},
              {"tree", to_json(tree)},
              {"branches", branches},
              {"support", std::vector<std::size_t>(support.begin(), support.end())}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic rigid-systems toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Root seed (u64)");
  app.add_option("--precision", cfg.precision, "p-adic precision N")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Write the report to this path atomically");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // sample
  std::uint64_t sample_p = 5;
  int sample_depth = 4;
  auto* sample = app.add_subcommand("sample", "Random tree digits, branch values and a support");
  sample->add_option("--p", sample_p, "Prime");
  sample->add_option("--depth", sample_depth, "Tree depth")->check(CLI::Range(0, 20));

  // independence
  std::string ind_values;
  std::uint64_t ind_p = 7;
  int ind_degree = 2;
  long ind_height = 10;
  auto* independence = app.add_subcommand("independence", "Bounded integer relation search");
  independence->add_option("--values", ind_values, "Comma-separated residues")->required();
  independence->add_option("--p", ind_p, "Prime");
  independence->add_option("--degree", ind_degree, "Total degree bound")->check(CLI::NonNegativeNumber);
  independence->add_option("--height", ind_height, "Coefficient bound")->check(CLI::PositiveNumber);

  // corner
  auto* corner = app.add_subcommand("corner", "Corner-style model: build, member, rigidity");
  corner->require_subcommand(1);
  std::string corner_ring, corner_model_path, member_vector, labels_a = "0", labels_d = "0", map_kind = "identity",
                                                             map_r = "1";
  CornerParams cp;
  auto* corner_build = corner->add_subcommand("build", "Build a model and write it as JSON");
  corner_build->add_option("--ring", corner_ring, "Ring presentation JSON")->required();
  corner_build->add_option("--p", cp.p, "Prime");
  corner_build->add_option("--cap", cp.denominator_cap, "Denominator cap K");
  corner_build->add_option("--window", cp.window, "R-rank of the basis window");
  corner_build->add_option("--labels", cp.labels, "Number of labels");
  corner_build->add_option("--per-label", cp.per_label, "Generators per label");
  corner_build->add_option("--realizations", cp.realizations, "Independent realizations of the coefficients");
  auto* corner_member = corner->add_subcommand("member", "Membership of a constant vector in G^A");
  corner_member->add_option("--model", corner_model_path, "Model JSON")->required();
  corner_member->add_option("--vector", member_vector, "v0,v1,... or i:v,i:v")->required();
  corner_member->add_option("--A", labels_a, "Label set, comma-separated");
  auto* corner_rigidity = corner->add_subcommand("rigidity", "Rigidity check of a map G^A -> G^D");
  corner_rigidity->add_option("--model", corner_model_path, "Model JSON")->required();
  corner_rigidity->add_option("--map", map_kind, "identity, mult or random")
      ->check(CLI::IsMember({"identity", "mult", "random"}));
  corner_rigidity->add_option("--r", map_r, "Ring element for --map mult");
  corner_rigidity->add_option("--A", labels_a, "Source labels");
  corner_rigidity->add_option("--D", labels_d, "Target labels (may be empty)");

  // free-check
  std::uint64_t fc_p = 2;
  double fc_alpha = 1.5;
  std::size_t fc_window = 8, fc_m = 3;
  std::uint64_t fc_trials = 1000;
  auto* free_cmd = app.add_subcommand("free-check", "Independence verdict and free basis on random instances");
  free_cmd->add_option("--p", fc_p, "Prime");
  free_cmd->add_option("--alpha", fc_alpha, "Nearly-uniform exponent alpha > 1");
  free_cmd->add_option("--rank-window", fc_window, "Coordinate window W");
  free_cmd->add_option("--num-random", fc_m, "Random elements m");
  free_cmd->add_option("--trials", fc_trials, "Trials");

  // zassenhaus
  auto* zass = app.add_subcommand("zassenhaus", "Endomorphism-ring realizer");
  zass->require_subcommand(1);
  std::string z_ring, z_pairs = "auto";
  std::size_t z_pair_count = 8;
  RealizeOptions zopt;
  auto* realize_cmd = zass->add_subcommand("realize", "Run the sampled and deterministic constructions");
  realize_cmd->add_option("--ring", z_ring, "Ring presentation JSON")->required();
  realize_cmd->add_option("--pairs", z_pairs, "Pairs JSON file or auto");
  realize_cmd->add_option("--pair-count", z_pair_count, "Number of pairs for --pairs auto");
  realize_cmd->add_option("--budget", zopt.budget, "Prime budget X");
  realize_cmd->add_option("--box", zopt.box, "Coordinate box H");
  realize_cmd->add_flag("--deterministic-only", zopt.deterministic_only, "Skip the sampled construction");

  // density
  std::string poly;
  std::uint64_t bound = 100000;
  auto* density = app.add_subcommand("density", "Primes with a root of f and the reciprocal sums");
  density->add_option("--poly", poly, "Univariate integer polynomial in x")->required();
  density->add_option("--bound", bound, "Prime bound X")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 32));

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo experiments");
  mc->require_subcommand(1);
  int gl_n = 3;
  std::uint64_t gl_q = 3, gl_trials = 100000;
  auto* gl = mc->add_subcommand("gl", "Invertibility of uniform n x n matrices over F_q");
  gl->add_option("--n", gl_n, "Dimension")->check(CLI::Range(1, 64));
  gl->add_option("--q", gl_q, "Field size");
  gl->add_option("--trials", gl_trials, "Trials");

  // acceptance
  std::string suite = "all", rings_dir = PADIC_RIGID_RINGS_DIR;
  auto* acceptance = app.add_subcommand("acceptance", "Run the acceptance criteria");
  acceptance->add_option("suite", suite, "all or a criterion name");
  acceptance->add_option("--rings", rings_dir, "Directory of bundled ring presentations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const Seed root(cfg.seed);
    if (*sample) {
      if (!is_prime_u64(sample_p)) fail(ErrorCode::kParameter, "p must be prime");
      emit_json(cfg, sample_json(sample_p, sample_depth, precision_or(cfg, tree_precision(sample_depth)), root));
    } else if (*independence) {
      if (cfg.precision <= 0) fail(ErrorCode::kUsage, "independence needs --precision");
      std::vector<PadicApprox> xs;
      for (const auto& t : split(ind_values, ',')) xs.push_back(PadicApprox::from_integer(ind_p, cfg.precision, parse_integer(t)));
      emit_json(cfg, to_json(find_relation(xs, ind_degree, ind_height)));
    } else if (*corner_build) {
      cp.precision = precision_or(cfg, cp.precision);
      emit_json(cfg, to_json(build_corner_model(load_ring(corner_ring), cp, cfg.seed)));
    } else if (*corner_member) {
      const CornerModel model = corner_model_from_json(read_json_file(corner_model_path));
      const auto A = parse_labels(labels_a);
      const PadicVector x = parse_vector(member_vector, model.padic());
      Json j = to_json(membership(x, model, A));
      j["A"] = labels_json(A);
      j["precision"] = model.params.precision;
      emit_json(cfg, j);
    } else if (*corner_rigidity) {
      const CornerModel model = corner_model_from_json(read_json_file(corner_model_path));
      const auto A = parse_labels(labels_a), D = parse_labels(labels_d);
      RigidityResult r;
      if (map_kind == "random") {
        r = rigidity_trial(model, A, D, root);
      } else {
        const AdditiveMap phi = map_kind == "identity" ? identity_map(model) : multiplication_map(model, parse_element(map_r));
        r = rigidity_check(model, phi, A, D);
      }
      Json j = to_json(r);
      j["map"] = map_kind;
      j["A"] = labels_json(A);
      j["D"] = labels_json(D);
      emit_json(cfg, j);
    } else if (*free_cmd) {
      emit_json(cfg, to_json(free_check(fc_p, precision_or(cfg, 32), fc_alpha, fc_window, fc_m, fc_trials, cfg.seed)));
    } else if (*realize_cmd) {
      const RingPresentation ring = load_ring(z_ring);
      require_valid(ring);
      const auto pairs = z_pairs == "auto" ? sample_pairs(ring, zopt.box, z_pair_count, root.child("pairs"))
                                           : load_pairs(z_pairs);
      zopt.seed = cfg.seed;
      emit_json(cfg, to_json(realize(ring, pairs, zopt)));
    } else if (*density) {
      const DensityReport r = density_report(IntPolynomial::parse(poly), bound);
      emit(cfg, cfg.format == "csv" ? density_csv(r) : to_json(r).dump(2) + "\n");
    } else if (*gl) {
      const TrialSummary s = gl_invertibility_mc(gl_n, gl_q, gl_trials, cfg.seed);
      emit(cfg, cfg.format == "csv" ? trial_summary_csv(s) : to_json(s).dump(2) + "\n");
    } else if (*acceptance) {
      const auto results = run_acceptance(suite, rings_dir);
      Json criteria = Json::array();
      bool all = true;
      for (const auto& r : results) {
        std::cerr << format_line(r) << "\n";
        all = all && r.pass;
        criteria.push_back(Json{{"id", r.id},
                                {"name", r.name},
                                {"pass", r.pass},
                                {"checks_pass", r.checks_pass},
                                {"time_limit_seconds", r.limit},
                                {"detail", r.detail}});
      }
      emit_json(cfg, Json{{"suite", suite}, {"pass", all}, {"criteria", criteria}});
      return all ? 0 : 1;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kUsage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
