// Copyright 2026 The Namesake Authors
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

namespace namesake::cli {

// Parses argv and runs one subcommand. Returns the process exit status:
// 0 success, 1 usage error, 2 data validation error, 3 model/schema error.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace namesake::cli
