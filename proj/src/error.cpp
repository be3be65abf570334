/*
 * Copyright 2026 The votesweep Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "votesweep/error.hpp"

#include <algorithm>
#include <utility>

namespace votesweep {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::kDuplicateRunId: return "DuplicateRunId";
    case ErrorCode::kUnknownField: return "UnknownField";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kInvalidLabelSet: return "InvalidLabelSet";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kDuplicateSampleId: return "DuplicateSampleId";
    case ErrorCode::kEmptyFile: return "EmptyFile";
    case ErrorCode::kConfidenceMismatch: return "ConfidenceMismatch";
    case ErrorCode::kMissingSamples: return "MissingSamples";
    case ErrorCode::kExtraSamples: return "ExtraSamples";
    case ErrorCode::kEmptyIntersection: return "EmptyIntersection";
    case ErrorCode::kInvalidEnsemble: return "InvalidEnsemble";
    case ErrorCode::kMissingConfidence: return "MissingConfidence";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kInvalidSize: return "InvalidSize";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnsupportedKindFormat: return "UnsupportedKindFormat";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

namespace {

std::string join(const std::vector<Diagnostic>& diagnostics) {
  std::string text;
  for (const auto& d : diagnostics) {
    if (!text.empty()) text += '\n';
    text += to_string(d.code);
    text += ": ";
    text += d.message;
  }
  return text;
}

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : Error(diagnostics.empty() ? ErrorCode::kSchemaError
                                : diagnostics.front().code,
            std::to_string(diagnostics.size()) + " violation(s)\n" +
                join(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

bool ValidationError::has(ErrorCode code) const noexcept {
  return std::any_of(diagnostics_.begin(), diagnostics_.end(),
                     [code](const Diagnostic& d) { return d.code == code; });
}

void raise_if_any(std::vector<Diagnostic> diagnostics) {
  if (!diagnostics.empty()) throw ValidationError(std::move(diagnostics));
}

}  // namespace votesweep
