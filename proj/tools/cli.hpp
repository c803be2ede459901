// Copyright 2026 The qest Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace qest::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kNumerical = 3 };

/// Runs the command line and returns the process exit code. Results go to
/// --output when given (written to a temporary file and renamed into place)
/// and to `out` otherwise; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "8", "2:20:2" (start:stop:step, stop inclusive), "2:6" (step 1) or
/// "4,16,64". Values must be positive.
std::vector<int> parse_copies(const std::string& text);

/// Shortest round-trip decimal form.
std::string format_double(double value);

}  // namespace qest::cli
