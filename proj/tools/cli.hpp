// Copyright 2026 The mcpool Authors
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
#include <map>
#include <string>
#include <vector>

namespace mcpool::cli {

// Exit codes shared by all verbs.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIncomplete = 1;
inline constexpr int kExitError = 2;
inline constexpr int kExitStall = 3;
inline constexpr int kExitIterationCap = 4;

/// Runs one command line (without the program name) and returns the exit
/// code. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Reads a `key = value` config file; blank lines and `#` comments are
/// skipped. Throws mcpool::Error on malformed lines.
std::map<std::string, std::string> read_config(const std::string& path);

/// Expands `--config FILE` into `--key value` arguments placed right after
/// the verb, so that explicit flags, which come later, take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

/// Worker count for `scan`, from MCPOOL_THREADS (default 1).
unsigned thread_count();

}  // namespace mcpool::cli
