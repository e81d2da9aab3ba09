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

#include "namesake/training.hpp"

#include <algorithm>
#include <numeric>

#include "namesake/error.hpp"
#include "namesake/parallel.hpp"
#include "namesake/random.hpp"

namespace namesake {
namespace {

std::uint8_t MatchRules(const ReferenceFeatures& fa, const ReferenceFeatures& fb,
                        const NameParts& na, const NameParts& nb, int popularity_bin) {
  std::uint8_t rules = 0;
  if (!fa.email.empty() && fa.email == fb.email) rules |= kSharedEmail;
  if (popularity_bin == 0 && na.first.size() > 1 && na.first == nb.first &&
      na.middle_initial == nb.middle_initial && na.suffix == nb.suffix) {
    rules |= kRareFullName;
  }
  return rules;
}

}  // namespace

std::vector<MatchPair> GenerateMatchSet(const Corpus& corpus,
                                        const FeatureTable& features,
                                        unsigned threads) {
  const auto& blocks = corpus.blocks();
  const auto& refs = corpus.references();
  std::vector<std::vector<MatchPair>> per_block(blocks.size());
  ParallelFor(blocks.size(), threads, [&](std::size_t bi) {
    const Block& block = blocks[bi];
    auto& out = per_block[bi];
    for (std::size_t x = 0; x < block.refs.size(); ++x) {
      for (std::size_t y = x + 1; y < block.refs.size(); ++y) {
        const std::size_t a = block.refs[x];
        const std::size_t b = block.refs[y];
        const std::uint8_t rules = MatchRules(features[a], features[b], refs[a].name,
                                              refs[b].name, block.popularity_bin);
        if (rules != 0) out.push_back({{a, b}, rules});
      }
    }
  });
  std::vector<MatchPair> all;
  for (auto& v : per_block) all.insert(all.end(), v.begin(), v.end());
  return all;
}

std::vector<MatchPair> GenerateMatchSet(const Corpus& corpus) {
  return GenerateMatchSet(corpus, FeatureTable(corpus));
}

std::vector<RefPair> GenerateNonmatchSet(const Corpus& corpus, std::uint64_t seed,
                                         std::size_t size) {
  if (corpus.blocks().size() < 2) {
    throw Error(Errc::kInsufficientBlocks,
                "non-match sampling needs at least two blocks, corpus has " +
                    std::to_string(corpus.blocks().size()));
  }
  Rng rng(seed);
  const std::size_t n = corpus.references().size();
  std::vector<RefPair> pairs;
  pairs.reserve(size);
  while (pairs.size() < size) {
    const std::size_t a = rng.Uniform(n);
    const std::size_t b = rng.Uniform(n);
    if (corpus.block_of(a) == corpus.block_of(b)) continue;
    pairs.push_back({a, b});
  }
  return pairs;
}

RatioModel RatioModel::Empty(const ProfileSchema& schema, double alpha,
                             std::uint64_t min_count) {
  RatioModel m;
  m.schema_version = schema.version;
  m.alpha = alpha;
  m.min_count = min_count;
  for (std::size_t d = 0; d < kProfileDims; ++d) {
    m.dim_counts_m[d].assign(static_cast<std::size_t>(schema.dimensions[d].cardinality), 0);
    m.dim_counts_n[d].assign(static_cast<std::size_t>(schema.dimensions[d].cardinality), 0);
  }
  return m;
}

void RatioModel::Add(const SimilarityProfile& x, bool match) {
  const std::size_t index = ProfileIndex(x, ProfileSchema::V1());
  auto& full = match ? full_counts_m : full_counts_n;
  auto& dims = match ? dim_counts_m : dim_counts_n;
  ++full[index];
  for (std::size_t d = 0; d < kProfileDims; ++d) ++dims[d][x.levels[d]];
  ++(match ? total_m : total_n);
}

void RatioModel::Validate() const {
  auto fail = [](const std::string& what) { throw Error(Errc::kCorruptModel, what); };
  if (!(alpha > 0.0)) fail("alpha must be positive");
  if (min_count < 1) fail("min_count must be at least 1");
  if (schema_version != kCurrentSchemaVersion) {
    throw Error(Errc::kSchemaMismatch,
                "model schema_version " + std::to_string(schema_version) +
                    " is not supported (expected " +
                    std::to_string(kCurrentSchemaVersion) + ")");
  }
  const ProfileSchema& schema = ProfileSchema::V1();
  const std::size_t cells = schema.cell_count();
  auto check_side = [&](const std::map<std::size_t, std::uint64_t>& full,
                        const std::array<std::vector<std::uint64_t>, kProfileDims>& dims,
                        std::uint64_t total, const char* side) {
    std::uint64_t sum = 0;
    for (const auto& [index, count] : full) {
      if (index >= cells) fail(std::string("full_counts_") + side + " index out of range");
      sum += count;
    }
    if (sum != total) fail(std::string("full_counts_") + side + " does not sum to its total");
    for (std::size_t d = 0; d < kProfileDims; ++d) {
      if (dims[d].size() != static_cast<std::size_t>(schema.dimensions[d].cardinality)) {
        fail(std::string("dim_counts_") + side + " has the wrong shape");
      }
      if (std::accumulate(dims[d].begin(), dims[d].end(), std::uint64_t{0}) != total) {
        fail(std::string("dim_counts_") + side + " does not sum to its total");
      }
    }
  };
  check_side(full_counts_m, dim_counts_m, total_m, "m");
  check_side(full_counts_n, dim_counts_n, total_n, "n");
}

SimilarityProfile TrainingProfile(const Corpus& corpus, const FeatureTable& features,
                                  RefPair pair) {
  const int bin = corpus.blocks()[corpus.block_of(pair.a)].popularity_bin;
  return CompareFeatures(features[pair.a], features[pair.b], bin);
}

RatioModel FitRatioModel(const Corpus& corpus, const FeatureTable& features,
                         const ReferencePairSets& sets, const FitOptions& options) {
  if (sets.match_pairs.empty()) {
    throw Error(Errc::kEmptyTrainingSet, "the match set is empty");
  }
  if (sets.nonmatch_pairs.empty()) {
    throw Error(Errc::kEmptyTrainingSet, "the non-match set is empty");
  }
  if (!(options.alpha > 0.0)) throw Error(Errc::kDomainError, "alpha must be positive");
  if (options.min_count < 1) throw Error(Errc::kDomainError, "min_count must be >= 1");

  std::vector<SimilarityProfile> m_profiles(sets.match_pairs.size());
  std::vector<SimilarityProfile> n_profiles(sets.nonmatch_pairs.size());
  constexpr std::size_t kChunk = 4096;
  const std::size_t m_chunks = (m_profiles.size() + kChunk - 1) / kChunk;
  const std::size_t n_chunks = (n_profiles.size() + kChunk - 1) / kChunk;
  ParallelFor(m_chunks + n_chunks, options.threads, [&](std::size_t c) {
    if (c < m_chunks) {
      const std::size_t end = std::min(m_profiles.size(), (c + 1) * kChunk);
      for (std::size_t i = c * kChunk; i < end; ++i) {
        const MatchPair& mp = sets.match_pairs[i];
        SimilarityProfile x = TrainingProfile(corpus, features, mp.pair);
        if (options.neutralize_selection_evidence) {
          if (mp.rules & kSharedEmail) x.levels[kEmail] = kAbsent;
          if (mp.rules & kRareFullName) {
            x.levels[kMiddleInitial] = kAbsent;
            x.levels[kSuffix] = kAbsent;
          }
        }
        m_profiles[i] = x;
      }
    } else {
      const std::size_t cn = c - m_chunks;
      const std::size_t end = std::min(n_profiles.size(), (cn + 1) * kChunk);
      for (std::size_t i = cn * kChunk; i < end; ++i) {
        n_profiles[i] = TrainingProfile(corpus, features, sets.nonmatch_pairs[i]);
      }
    }
  });

  RatioModel model = RatioModel::Empty(ProfileSchema::V1(), options.alpha, options.min_count);
  for (const auto& x : m_profiles) model.Add(x, true);
  for (const auto& x : n_profiles) model.Add(x, false);
  return model;
}

RatioLookup LookupRatio(const RatioModel& model, const SimilarityProfile& x) {
  if (x.schema_version != model.schema_version) {
    throw Error(Errc::kSchemaMismatch,
                "profile schema v" + std::to_string(x.schema_version) +
                    " cannot be scored by a v" + std::to_string(model.schema_version) +
                    " model");
  }
  const ProfileSchema& schema = ProfileSchema::V1();
  const std::size_t index = ProfileIndex(x, schema);
  auto count_of = [index](const std::map<std::size_t, std::uint64_t>& table) {
    const auto it = table.find(index);
    return it == table.end() ? std::uint64_t{0} : it->second;
  };
  const double alpha = model.alpha;
  const double total_m = static_cast<double>(model.total_m);
  const double total_n = static_cast<double>(model.total_n);
  const std::uint64_t c_m = count_of(model.full_counts_m);
  const std::uint64_t c_n = count_of(model.full_counts_n);

  RatioLookup out;
  if (c_m + c_n >= model.min_count) {
    const double p_m = (static_cast<double>(c_m) + alpha) / (total_m + 2.0 * alpha);
    const double p_n = (static_cast<double>(c_n) + alpha) / (total_n + 2.0 * alpha);
    out.r = p_m / p_n;
  } else {
    out.backoff = true;
    double r = 1.0;
    for (std::size_t d = 0; d < kProfileDims; ++d) {
      const double card = schema.dimensions[d].cardinality;
      const double p_m =
          (static_cast<double>(model.dim_counts_m[d][x.levels[d]]) + alpha) /
          (total_m + alpha * card);
      const double p_n =
          (static_cast<double>(model.dim_counts_n[d][x.levels[d]]) + alpha) /
          (total_n + alpha * card);
      r *= p_m / p_n;
    }
    out.r = r;
  }
  out.r = std::clamp(out.r, kMinRatio, kMaxRatio);
  return out;
}

double RValue(const RatioModel& model, const SimilarityProfile& x) {
  return LookupRatio(model, x).r;
}

}  // namespace namesake
