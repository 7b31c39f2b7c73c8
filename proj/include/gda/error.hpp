// Copyright 2026 The gda Authors
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace gda {

enum class ErrorCode {
  kInvalidArgument,
  kDimensionMismatch,
  kNotPositiveDefinite,
  kNoConvergence,
  kEmptyDataset,
  kEmptyClass,
  kInsufficientSamples,
  kPriorSumInvalid,
  kNotBinary,
  kNoCrossing,
  kNotDistanceMatrix,
  kDegenerateMeans,
  kDegenerateComponent,
  kTooFewPoints,
  kUnknownScenario,
  kNonPlanarModel,
  kParseError,
  kIoError,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kEmptyClass: return "EmptyClass";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kPriorSumInvalid: return "PriorSumInvalid";
    case ErrorCode::kNotBinary: return "NotBinary";
    case ErrorCode::kNoCrossing: return "NoCrossing";
    case ErrorCode::kNotDistanceMatrix: return "NotDistanceMatrix";
    case ErrorCode::kDegenerateMeans: return "DegenerateMeans";
    case ErrorCode::kDegenerateComponent: return "DegenerateComponent";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kUnknownScenario: return "UnknownScenario";
    case ErrorCode::kNonPlanarModel: return "NonPlanarModel";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for failures caused by degenerate numerics rather than bad input.
  bool is_numeric() const noexcept {
    switch (code_) {
      case ErrorCode::kNotPositiveDefinite:
      case ErrorCode::kNoConvergence:
      case ErrorCode::kNoCrossing:
      case ErrorCode::kDegenerateMeans:
      case ErrorCode::kDegenerateComponent:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

}  // namespace gda
