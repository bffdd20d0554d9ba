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
#include <vector>

namespace padic_rigid {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;       // checks hold and seconds < limit
  bool checks_pass = false;
  double seconds = 0;
  double limit = 0;
  std::string detail;      // deterministic summary of the measured quantities
};

/// Suite names: "all" or one criterion name (see acceptance_suites()).
std::vector<std::string> acceptance_suites();

/// Runs the criteria of `suite` with fixed seeds. rings_dir holds the bundled
/// ring presentations. Throws kUsage for an unknown suite.
std::vector<CriterionResult> run_acceptance(const std::string& suite, const std::string& rings_dir);

/// "PASS [id] name (x.xxs < limit s): detail"
std::string format_line(const CriterionResult& r);

}  // namespace padic_rigid
