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

#include "namesake/error.hpp"

namespace namesake {

std::string_view ErrcName(Errc code) {
  switch (code) {
    case Errc::kEmptyLastName: return "EmptyLastName";
    case Errc::kDuplicateCitationId: return "DuplicateCitationId";
    case Errc::kInvalidInput: return "InvalidInput";
    case Errc::kBlockMismatch: return "BlockMismatch";
    case Errc::kSelfPair: return "SelfPair";
    case Errc::kOutOfRange: return "OutOfRange";
    case Errc::kInsufficientBlocks: return "InsufficientBlocks";
    case Errc::kEmptyTrainingSet: return "EmptyTrainingSet";
    case Errc::kSchemaMismatch: return "SchemaMismatch";
    case Errc::kIo: return "Io";
    case Errc::kFormatVersionUnsupported: return "FormatVersionUnsupported";
    case Errc::kCorruptModel: return "CorruptModel";
    case Errc::kDomainError: return "DomainError";
    case Errc::kReferenceSetMismatch: return "ReferenceSetMismatch";
    case Errc::kEmptyInput: return "EmptyInput";
    case Errc::kUsage: return "Usage";
  }
  return "Unknown";
}

int ExitCodeFor(Errc code) {
  switch (code) {
    case Errc::kUsage:
    case Errc::kIo:
      return 1;
    case Errc::kSchemaMismatch:
    case Errc::kFormatVersionUnsupported:
    case Errc::kCorruptModel:
      return 3;
    default:
      return 2;
  }
}

}  // namespace namesake
