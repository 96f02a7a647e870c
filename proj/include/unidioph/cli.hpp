// Copyright 2026 The unidioph Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace unidioph::cli {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kSuccess = 0,
  kBoundViolated = 1,  // verify found a violation, or a replay did not match
  kUsageError = 2,
  kNumericalFailure = 3,
};

/// Run the tool on `args` (without the program name), writing the result to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unidioph::cli
