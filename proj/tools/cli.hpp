// Copyright 2026 The detwalk Authors
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

#include "json.hpp"

namespace detwalk::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;

// Runs one subcommand. args excludes the program name. JSON goes to out,
// the human summary to err.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Serializes with sorted keys and 17 significant digits for every real.
std::string dump_report(const nlohmann::json &j);
std::string format_real(double x);

}  // namespace detwalk::cli
