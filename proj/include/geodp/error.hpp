// Copyright 2026 The GeoDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geodp {

enum class ErrorCode {
  kSpecMismatch,
  kInvalidPoint,
  kInvalidTangent,
  kDomain,
  kCutLocus,
  kUnsupportedManifold,
  kNormalization,
  kInfeasibleBudget,
  kDriftTooWeak,
  kRegime,
  kNoValidBound,
  kConvergence,
  kAccuracy,
  kConfig,
  kIo,
};

constexpr std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSpecMismatch: return "spec-mismatch";
    case ErrorCode::kInvalidPoint: return "invalid-point";
    case ErrorCode::kInvalidTangent: return "invalid-tangent";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kCutLocus: return "cut-locus";
    case ErrorCode::kUnsupportedManifold: return "unsupported-manifold";
    case ErrorCode::kNormalization: return "normalization";
    case ErrorCode::kInfeasibleBudget: return "infeasible-budget";
    case ErrorCode::kDriftTooWeak: return "drift-too-weak";
    case ErrorCode::kRegime: return "regime";
    case ErrorCode::kNoValidBound: return "no-valid-bound";
    case ErrorCode::kConvergence: return "convergence";
    case ErrorCode::kAccuracy: return "accuracy";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

// Inverse of ErrorCodeName; nullopt for unknown names.
inline std::optional<ErrorCode> ParseErrorCode(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(ErrorCode::kIo); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    if (ErrorCodeName(code) == name) return code;
  }
  return std::nullopt;
}

// All library failures are reported through this type; `code()` lets callers
// tell the failure kinds apart without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace geodp
