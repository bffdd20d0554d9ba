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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "padic_rigid/errors.hpp"
#include "padic_rigid/json_io.hpp"

using namespace padic_rigid;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

std::string rings(const char* name) { return std::string(PADIC_RIGID_RINGS_DIR) + "/" + name + ".json"; }

std::string temp_path(const char* name) { return std::string("/tmp/padic_rigid_test_") + name; }

}  // namespace

TEST_CASE("bundled ring files match the built-in presentations") {
  CHECK(load_ring(rings("integers")).structure == integers_ring().structure);
  CHECK(load_ring(rings("gaussian_integers")).structure == gaussian_integers_ring().structure);
  CHECK(load_ring(rings("z_cross_z")).structure == z_cross_z_ring().structure);
  const auto ut = load_ring(rings("upper_triangular_2x2"));
  CHECK(ut.structure == upper_triangular_ring().structure);
  CHECK(ut.identity == upper_triangular_ring().identity);
  CHECK_FALSE(validate(load_ring(rings("broken_tensor"))).empty());
}

TEST_CASE("ring JSON round trip and string integers") {
  for (const auto& r : {integers_ring(), gaussian_integers_ring(), z_cross_z_ring(), upper_triangular_ring()}) {
    const auto back = ring_from_json(Json::parse(ring_to_json(r).dump()));
    CHECK(back.rank == r.rank);
    CHECK(back.structure == r.structure);
    CHECK(back.identity == r.identity);
  }
  const auto j = Json::parse(R"({"rank": "1", "structure": [[["1"]]], "identity": ["1"]})");
  CHECK(ring_from_json(j).structure == integers_ring().structure);
}

TEST_CASE("ring loading errors") {
  CHECK(code_of([] { load_ring("/nonexistent/missing.json"); }) == ErrorCode::kUsage);
  const auto bad = temp_path("bad.json");
  write_atomic(bad, "{ not json");
  CHECK(code_of([&] { load_ring(bad); }) == ErrorCode::kInput);
  write_atomic(bad, R"({"rank": 2, "structure": [[[1]]], "identity": [1, 0]})");
  CHECK(code_of([&] { load_ring(bad); }) == ErrorCode::kInput);
  write_atomic(bad, R"({"rank": 1, "structure": [[[1.5]]], "identity": [1]})");
  CHECK(code_of([&] { load_ring(bad); }) == ErrorCode::kInput);
  std::remove(bad.c_str());
}

TEST_CASE("atomic write replaces the file") {
  const auto path = temp_path("atomic.txt");
  write_atomic(path, "first");
  write_atomic(path, "second");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "second");
  std::remove(path.c_str());
  CHECK(code_of([] { write_atomic("/nonexistent/dir/x.json", "x"); }) == ErrorCode::kResource);
}

TEST_CASE("corner model round trip detects tampering") {
  CornerParams p;
  p.window = 2;
  p.labels = 2;
  p.per_label = 1;
  p.realizations = 2;
  const auto model = build_corner_model(gaussian_integers_ring(), p, 17);
  Json j = Json::parse(to_json(model).dump());
  const auto back = corner_model_from_json(j);
  CHECK(back.values == model.values);
  auto& coeffs = j["generators"][0]["coefficients"][0];
  const std::string key = coeffs.begin().key();
  coeffs[key] = mpz_class(mpz_class(coeffs[key].get<std::string>()) + 1).get_str();
  CHECK(code_of([&] { corner_model_from_json(j); }) == ErrorCode::kInput);
  CHECK(code_of([] { corner_model_from_json(Json::parse("{}")); }) == ErrorCode::kInput);
}

TEST_CASE("exact fields are strings") {
  const auto r = density_report(IntPolynomial::parse("x"), 30);
  const Json j = to_json(r);
  CHECK(j["density"] == "1");
  CHECK(j["reciprocal_sum"].is_string());
  CHECK(mpq_class(j["reciprocal_sum"].get<std::string>()) == r.reciprocal_sum);
  const auto csv = density_csv(r);
  CHECK(csv.rfind("bound,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(r.decades.size()) + 1);

  TrialSummary s{"x", 4, 1, mpq_class(1, 2)};
  const Json t = to_json(s);
  CHECK(t["frequency"] == "1/4");
  CHECK(t["target"] == "1/2");
  CHECK(to_json(PadicApprox::from_integer(5, 3, 63))["residue"] == "63");
}
