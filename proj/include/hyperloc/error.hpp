// Copyright 2026 The hyperloc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYPERLOC_ERROR_HPP_
#define HYPERLOC_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperloc {

enum class ErrorCode {
  syntax,
  unknown_identifier,
  domain,
  regularity,
  singular_matrix,
  complex_roots,
  degenerate_direction,
  seed_at_umbilic,
  degenerate_branch,
  too_few_samples,
  repeated_root,
  degenerate_curvature,
  geodesic_degenerate,
  planar_degenerate,
  invalid_argument,
};

/// Stable snake_case name, used in machine-readable diagnostics.
constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax: return "syntax_error";
    case ErrorCode::unknown_identifier: return "unknown_identifier";
    case ErrorCode::domain: return "domain_error";
    case ErrorCode::regularity: return "regularity_error";
    case ErrorCode::singular_matrix: return "singular_matrix";
    case ErrorCode::complex_roots: return "complex_roots";
    case ErrorCode::degenerate_direction: return "degenerate_direction";
    case ErrorCode::seed_at_umbilic: return "seed_at_umbilic";
    case ErrorCode::degenerate_branch: return "degenerate_branch";
    case ErrorCode::too_few_samples: return "too_few_samples";
    case ErrorCode::repeated_root: return "repeated_root";
    case ErrorCode::degenerate_curvature: return "degenerate_curvature";
    case ErrorCode::geodesic_degenerate: return "geodesic_degenerate";
    case ErrorCode::planar_degenerate: return "planar_degenerate";
    case ErrorCode::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, int line, int column)
      : Error(code, "line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace hyperloc

#endif  // HYPERLOC_ERROR_HPP_
