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

#ifndef HYPERLOC_CLI_HPP_
#define HYPERLOC_CLI_HPP_

#include <iosfwd>
#include <map>
#include <string>

#include "hyperloc/frenet.hpp"
#include "hyperloc/tracer.hpp"
#include "hyperloc/vec.hpp"

namespace hyperloc::cli {

enum class Command { analyze, trace, curvatures, validate };
enum class Format { csv, json };

struct RunConfig {
  Command command = Command::analyze;
  std::string surface_path;
  Vec3 seed;
  TraceConfig trace;
  FrenetTolerances frenet;
  /// Pass/fail thresholds of the validate checks, by check name.
  std::map<std::string, double> checks;
  std::string out_path;
  Format format = Format::csv;
};

/// Default thresholds of the validate command.
std::map<std::string, double> default_checks();

/// Applies NAME=VALUE to cfg. Throws Error(invalid_argument) for unknown
/// names or malformed values.
void apply_tolerance(RunConfig& cfg, const std::string& assignment);

/// Entry point of the command-line tool. Returns the process exit code:
/// 0 success, 1 runtime or validation failure, 2 input error. Every nonzero
/// exit writes exactly one "error: <code>: <message>" line to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hyperloc::cli

#endif  // HYPERLOC_CLI_HPP_
