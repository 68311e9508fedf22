// Copyright 2026 The dlcz-sim Authors
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

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dlcz/cli/config.hpp"

namespace dlcz::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kOk = 0, kConfig = 2, kNumeric = 3, kInfeasible = 4 };

using Value = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, Value>> scalars;
  std::vector<Table> tables;
  /// Human-readable summary lines, written to standard error.
  std::vector<std::string> summary;
};

/// rates, dynamics, chain, scaling, optimize, chsh, teleport, ekert, montecarlo.
const std::vector<std::string>& command_names();

Report run_command(const std::string& name, const Config& config);

/// One row per value of "section.key" from a to b inclusive; columns are the
/// swept value followed by the command's numeric scalars.
Report run_sweep(const std::string& name, const Config& config, const std::string& sweep);

void write_report(const Report& report, Format format, int precision, std::ostream& out);

/// Formats with the given significant digits; inf/nan spelled out.
std::string format_number(double v, int precision);

/// Relative paths go under $DLCZ_OUTPUT_DIR when that is set.
std::string resolve_output_path(const std::string& path);

/// 2 for configuration errors, 3 for numerical failures, 4 for infeasible
/// parameters, 1 otherwise.
int exit_code_for(const std::exception_ptr& error);

}  // namespace dlcz::cli
