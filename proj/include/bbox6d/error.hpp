// Copyright 2026 The bbox6d Authors
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

#ifndef BBOX6D_ERROR_HPP_
#define BBOX6D_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace bbox6d {

enum class ErrorCode {
  kInvalidInput,
  kDegenerateInput,
  kInvalidRotation,
  kBehindCamera,
  kDegenerateGeometry,
  kParseError,
  kUnsupportedFormat,
};

inline const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kInvalidRotation: return "InvalidRotation";
    case ErrorCode::kBehindCamera: return "BehindCamera";
    case ErrorCode::kDegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
  }
  return "Unknown";
}

/// Process exit code for the CLI: 2 invalid input, 3 degenerate geometry,
/// 4 parse error.
inline int ExitCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
    case ErrorCode::kDegenerateInput:
    case ErrorCode::kInvalidRotation:
      return 2;
    case ErrorCode::kBehindCamera:
    case ErrorCode::kDegenerateGeometry:
      return 3;
    case ErrorCode::kParseError:
    case ErrorCode::kUnsupportedFormat:
      return 4;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ToString(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bbox6d

#endif  // BBOX6D_ERROR_HPP_
