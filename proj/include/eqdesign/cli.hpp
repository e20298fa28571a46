/*
 * Copyright 2026 the eqdesign authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef EQDESIGN_CLI_HPP
#define EQDESIGN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace eqdesign::cli {

// Exit codes shared by every subcommand.
constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceLimit = 3;

/**
 * Runs one invocation.  Human-readable output and, with --json, the
 * structured result document go to `out`; diagnostics go to `err`.
 * The structured output is byte-deterministic for identical invocations,
 * whatever the thread count.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace eqdesign::cli

#endif
