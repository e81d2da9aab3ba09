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
#include <map>
#include <string>
#include <vector>

#include "namesake/corpus.hpp"
#include "namesake/profile.hpp"

namespace namesake {

// Two reference indices into Corpus::references().
struct RefPair {
  std::size_t a = 0;
  std::size_t b = 0;

  friend bool operator==(const RefPair&, const RefPair&) = default;
};

// Which auto-labelling rule admitted a pair into the match set.
enum MatchRule : std::uint8_t {
  kSharedEmail = 1 << 0,
  kRareFullName = 1 << 1,
};

struct MatchPair {
  RefPair pair;
  std::uint8_t rules = 0;

  friend bool operator==(const MatchPair&, const MatchPair&) = default;
};

struct ReferencePairSets {
  std::vector<MatchPair> match_pairs;
  std::vector<RefPair> nonmatch_pairs;
};

// Within-block pairs that (i) carry the same non-empty email, or (ii) sit in
// a popularity-bin-0 block and agree on a full first name (> 1 character),
// middle initial and suffix (both-absent counts as agreement).
std::vector<MatchPair> GenerateMatchSet(const Corpus& corpus,
                                        const FeatureTable& features,
                                        unsigned threads = 1);
std::vector<MatchPair> GenerateMatchSet(const Corpus& corpus);

// `size` cross-block pairs drawn uniformly (with replacement) from the seeded
// generator. Throws Error(kInsufficientBlocks) for fewer than two blocks.
std::vector<RefPair> GenerateNonmatchSet(const Corpus& corpus, std::uint64_t seed,
                                         std::size_t size);

// Smoothed likelihood-ratio table over the discrete profile space.
struct RatioModel {
  int schema_version = kCurrentSchemaVersion;
  double alpha = 0.5;
  std::uint64_t min_count = 5;
  std::uint64_t total_m = 0;
  std::uint64_t total_n = 0;
  std::map<std::size_t, std::uint64_t> full_counts_m;
  std::map<std::size_t, std::uint64_t> full_counts_n;
  std::array<std::vector<std::uint64_t>, kProfileDims> dim_counts_m;
  std::array<std::vector<std::uint64_t>, kProfileDims> dim_counts_n;
  // Serialized run configuration echoed into the model file; opaque here.
  std::string config_json;

  // Empty count tables sized for `schema`.
  static RatioModel Empty(const ProfileSchema& schema, double alpha,
                          std::uint64_t min_count);

  // Adds one observed profile to the match (true) or non-match side.
  void Add(const SimilarityProfile& x, bool match);

  // Checks totals, table shapes and parameter ranges; throws kCorruptModel.
  void Validate() const;

  friend bool operator==(const RatioModel&, const RatioModel&) = default;
};

struct FitOptions {
  double alpha = 0.5;
  std::uint64_t min_count = 5;
  // Record the dimensions a match rule conditioned on as "absent" in that
  // pair's training profile, so the selection criterion does not leak into
  // P(x|M).
  bool neutralize_selection_evidence = true;
  unsigned threads = 1;
};

// Profile of a training pair as it is counted by FitRatioModel.
SimilarityProfile TrainingProfile(const Corpus& corpus, const FeatureTable& features,
                                  RefPair pair);

RatioModel FitRatioModel(const Corpus& corpus, const FeatureTable& features,
                         const ReferencePairSets& sets, const FitOptions& options = {});

struct RatioLookup {
  double r = 1.0;
  bool backoff = false;
};

// r(x) = P(x|M) / P(x|N): the additively smoothed full-cell estimate when the
// cell has at least min_count observations, otherwise the product of smoothed
// per-dimension ratios. Clamped to [1e-6, 1e6]. Throws Error(kSchemaMismatch).
RatioLookup LookupRatio(const RatioModel& model, const SimilarityProfile& x);
double RValue(const RatioModel& model, const SimilarityProfile& x);

inline constexpr double kMinRatio = 1e-6;
inline constexpr double kMaxRatio = 1e6;

inline constexpr int kModelFormatVersion = 1;

void SaveModel(const RatioModel& model, const std::string& path);
RatioModel LoadModel(const std::string& path);

// Serialized bytes and their checksum, exactly as SaveModel writes them.
std::string SerializeModel(const RatioModel& model);
RatioModel DeserializeModel(const std::string& bytes);
std::string ModelChecksum(const RatioModel& model);

}  // namespace namesake
