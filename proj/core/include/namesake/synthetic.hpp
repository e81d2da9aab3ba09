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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace namesake {

// Settings for a seeded synthetic bibliography with known authorship.
struct SyntheticOptions {
  std::size_t authors = 200;
  std::size_t keys = 40;  // distinct LN-FI keys shared by the authors
  std::size_t citations = 1000;
  double token_dropout = 0.10;
  double missing_email = 0.70;
  double missing_affiliation = 0.50;
  // Chance that a citation also lists an author from an unrelated team.
  double guest_rate = 0.10;
  std::uint64_t seed = 2024;
};

struct GoldCluster {
  std::string block;
  std::size_t cluster_id = 0;
  std::vector<std::string> refs;
};

struct SyntheticCorpus {
  // One citation per line, in the ingestion format.
  std::string jsonl;
  // One cluster per author that has at least one reference, sorted by block
  // then cluster_id.
  std::vector<GoldCluster> gold;
};

// Authors are grouped into teams of four with distinct keys; each team owns a
// topic vocabulary, journals, subject terms, affiliation and language, and
// every citation is written by members of one team.
SyntheticCorpus GenerateSyntheticCorpus(const SyntheticOptions& options = {});

}  // namespace namesake
