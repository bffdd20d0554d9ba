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

#include "padic_rigid/errors.hpp"

namespace padic_rigid {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIncompatibleOperands: return "incompatible-operands";
    case ErrorCode::kNonUnit: return "non-unit";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kParameter: return "parameter";
    case ErrorCode::kArity: return "arity";
    case ErrorCode::kResource: return "resource";
    case ErrorCode::kInput: return "input";
    case ErrorCode::kNonInvertible: return "non-invertible";
    case ErrorCode::kInconclusive: return "inconclusive";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kInternal: return "internal";
    case ErrorCode::kUsage: return "usage";
  }
  return "unknown";
}

}  // namespace padic_rigid
