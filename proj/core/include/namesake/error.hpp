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

#include <stdexcept>
#include <string>
#include <string_view>

namespace namesake {

enum class Errc {
  kEmptyLastName,
  kDuplicateCitationId,
  kInvalidInput,
  kBlockMismatch,
  kSelfPair,
  kOutOfRange,
  kInsufficientBlocks,
  kEmptyTrainingSet,
  kSchemaMismatch,
  kIo,
  kFormatVersionUnsupported,
  kCorruptModel,
  kDomainError,
  kReferenceSetMismatch,
  kEmptyInput,
  kUsage,
};

std::string_view ErrcName(Errc code);

// All library failures are reported through this exception type. The code
// decides how the CLI maps the failure onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(ErrcName(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Exit status used by the CLI: 1 usage, 2 data validation, 3 model/schema.
int ExitCodeFor(Errc code);

}  // namespace namesake
