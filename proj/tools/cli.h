/*
 * Copyright 2026 The hsidj Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HSIDJ_TOOLS_CLI_H_
#define HSIDJ_TOOLS_CLI_H_

#include <ostream>

namespace hsidj::cli {

// Exit statuses of `hsidj`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;  // audit / split / data validation
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;          // I/O or file format

// Entry point of the command-line tool; never throws.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace hsidj::cli

#endif  // HSIDJ_TOOLS_CLI_H_
