// Copyright 2026 The sepgate Authors
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

/**
 * @file cli.hpp
 * Command-line front end. Exit codes: 0 pass, 1 verification failure,
 * 2 usage, 3 I/O, parse or input error.
 */
#pragma once

#include <ostream>

namespace sepgate::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kInput = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sepgate::cli
