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

#include <string>

#include <gmpxx.h>

#include "json.hpp"
#include "padic_rigid/corner.hpp"
#include "padic_rigid/free_detector.hpp"
#include "padic_rigid/independence.hpp"
#include "padic_rigid/prime_density.hpp"
#include "padic_rigid/random_padic.hpp"
#include "padic_rigid/ring_algebra.hpp"
#include "padic_rigid/stats.hpp"
#include "padic_rigid/zassenhaus.hpp"

namespace padic_rigid {

/// Exact values are strings ("123", "31/30"); decimal fields are
/// convenience copies.
using Json = nlohmann::ordered_json;

std::string decimal(const mpq_class& q, int digits = 15);

/// {"rank", "structure", "identity"} with an optional "name"; integers may be
/// JSON numbers or strings. Throws kInput on malformed documents.
RingPresentation ring_from_json(const Json& j);
Json ring_to_json(const RingPresentation& ring);

/// Throws kUsage when the file cannot be opened and kInput when it does not
/// parse as a ring presentation.
RingPresentation load_ring(const std::string& path);

Json read_json_file(const std::string& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);

Json to_json(const PadicApprox& x);
Json to_json(const PadicVector& v);
Json to_json(const TreeCoefficients& t);
Json to_json(const RelationReport& r);
Json to_json(const IndependenceVerdict& v);
Json to_json(const ContainmentReport& r);
Json to_json(const FreeCheckReport& r);
Json to_json(const ZassenhausDatum& d);
Json to_json(const ConstructionReport& r);
Json to_json(const DensityReport& r);
Json to_json(const TrialSummary& s);
Json to_json(const CornerModel& m);
Json to_json(const MembershipResult& r);
Json to_json(const RigidityResult& r);

/// Rebuilds the model from its ring, parameters and seed and checks the
/// stored coefficients against the rebuild (kInput on mismatch).
CornerModel corner_model_from_json(const Json& j);

/// Per-decade CSV rows: bound,primes_scanned,primes_with_root,reciprocal_sum,decimal.
std::string density_csv(const DensityReport& r);
std::string trial_summary_csv(const TrialSummary& s);

}  // namespace padic_rigid
