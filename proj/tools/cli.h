// Copyright 2026 The anred Authors
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

// The `anred` command line, callable in-process.
//
// Every invocation writes one report to `out`: `key=value` lines starting
// with `schema=anred.report.v1`. A human-readable summary goes to `err`.

#ifndef ANRED_TOOLS_CLI_H_
#define ANRED_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace anred::cli {

inline constexpr int kExitOk = 0;
// The property asserted by the command is false (cutset, oracle).
inline constexpr int kExitFalse = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;

// `args` excludes the program name. `in` backs the `-` model path.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

// Report without its `timing.*` lines, for comparisons.
std::string canonical_report(const std::string& report);

}  // namespace anred::cli

#endif  // ANRED_TOOLS_CLI_H_
