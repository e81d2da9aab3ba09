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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "namesake/corpus.hpp"

namespace namesake {

// Comparison dimensions of a similarity profile, in schema order. The last
// dimension is the least significant digit of the dense profile index.
enum Dimension : std::size_t {
  kTitle = 0,
  kJournal,
  kCoauthor,
  kSubject,
  kLanguage,
  kAffiliation,
  kEmail,
  kMiddleInitial,
  kSuffix,
  kNamePopularity,
};

inline constexpr std::size_t kProfileDims = 10;
inline constexpr int kCurrentSchemaVersion = 1;

struct DimensionSpec {
  std::string_view name;
  int cardinality;
};

struct ProfileSchema {
  int version = kCurrentSchemaVersion;
  std::array<DimensionSpec, kProfileDims> dimensions;

  // Product of all cardinalities (52,488 for v1).
  std::size_t cell_count() const;

  static const ProfileSchema& V1();
};

// Tri-state levels used by language, email, middle initial and suffix.
inline constexpr std::uint8_t kMismatch = 0;
inline constexpr std::uint8_t kAbsent = 1;
inline constexpr std::uint8_t kAgree = 2;

struct SimilarityProfile {
  std::array<std::uint8_t, kProfileDims> levels{};
  int schema_version = kCurrentSchemaVersion;

  friend bool operator==(const SimilarityProfile&, const SimilarityProfile&) = default;
};

bool IsValidProfile(const SimilarityProfile& x, const ProfileSchema& schema);

// Mixed-radix bijection between valid profiles and [0, cell_count).
// Both throw Error(kOutOfRange) on invalid input.
std::size_t ProfileIndex(const SimilarityProfile& x, const ProfileSchema& schema);
SimilarityProfile ProfileUnindex(std::size_t index, const ProfileSchema& schema);

// Pre-normalized comparison inputs for one author reference.
struct ReferenceFeatures {
  std::vector<std::string> title_tokens;        // sorted, unique, no stopwords
  std::string journal;                          // empty when absent
  std::vector<std::string> coauthors;           // other authors' last names
  std::vector<std::string> subjects;            // sorted, unique
  std::string language;                         // empty when absent
  std::vector<std::string> affiliation_tokens;  // empty when absent
  std::string email;                            // empty when absent
  std::optional<char> middle_initial;
  std::optional<std::string> suffix;
};

ReferenceFeatures ExtractFeatures(const CitationRecord& record,
                                  std::uint32_t position);

// Token-set Jaccard bucketed into {0: <0.2 or absent, 1: [0.2,0.6], 2: >0.6}.
std::uint8_t AffiliationLevel(const std::vector<std::string>& a,
                              const std::vector<std::string>& b);

// Raw comparison with no block checks. Symmetric in (a, b).
SimilarityProfile CompareFeatures(const ReferenceFeatures& a,
                                  const ReferenceFeatures& b,
                                  int popularity_bin);

// Features for every reference of a corpus, indexed like Corpus::references().
class FeatureTable {
 public:
  explicit FeatureTable(const Corpus& corpus);

  const ReferenceFeatures& operator[](std::size_t ref_index) const {
    return features_[ref_index];
  }
  std::size_t size() const { return features_.size(); }

 private:
  std::vector<ReferenceFeatures> features_;
};

// Profile of two distinct references in the same block. Throws
// Error(kBlockMismatch) or Error(kSelfPair).
SimilarityProfile ComputeProfile(const Corpus& corpus, const FeatureTable& features,
                                 std::size_t a, std::size_t b);
SimilarityProfile ComputeProfile(const Corpus& corpus, std::size_t a, std::size_t b);

}  // namespace namesake
