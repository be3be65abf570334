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

#ifndef VOTESWEEP_ERROR_HPP_
#define VOTESWEEP_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace votesweep {

enum class ErrorCode {
  kIo,
  kParseError,
  kUnsupportedVersion,
  kDuplicateRunId,
  kUnknownField,
  kSchemaError,
  kInvalidLabelSet,
  kUnknownLabel,
  kDuplicateSampleId,
  kEmptyFile,
  kConfidenceMismatch,
  kMissingSamples,
  kExtraSamples,
  kEmptyIntersection,
  kInvalidEnsemble,
  kMissingConfidence,
  kLengthMismatch,
  kEmptyInput,
  kInvalidSize,
  kInvalidArgument,
  kUnsupportedKindFormat,
};

std::string_view to_string(ErrorCode code);

struct Diagnostic {
  ErrorCode code;
  std::string message;
};

// Base exception for every failure raised by the library. The message is
// already human readable; code() allows callers to branch without parsing it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Carries every violation found while validating inputs, not only the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept {
    return diagnostics_;
  }

  bool has(ErrorCode code) const noexcept;

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Throws ValidationError when `diagnostics` is non-empty.
void raise_if_any(std::vector<Diagnostic> diagnostics);

}  // namespace votesweep

#endif  // VOTESWEEP_ERROR_HPP_
