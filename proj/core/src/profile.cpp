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

#include "namesake/profile.hpp"

#include <algorithm>

#include "namesake/error.hpp"
#include "namesake/text.hpp"

namespace namesake {
namespace {

template <typename T>
std::uint8_t TriState(const T& a, const T& b, bool a_present, bool b_present) {
  if (!a_present || !b_present) return kAbsent;
  return a == b ? kAgree : kMismatch;
}

std::uint8_t Capped(std::size_t count, std::size_t cap) {
  return static_cast<std::uint8_t>(std::min(count, cap));
}

}  // namespace

const ProfileSchema& ProfileSchema::V1() {
  static const ProfileSchema schema{
      kCurrentSchemaVersion,
      {{{"title", 4},
        {"journal", 2},
        {"coauthor", 3},
        {"subject", 3},
        {"language", 3},
        {"affiliation", 3},
        {"email", 3},
        {"middle_initial", 3},
        {"suffix", 3},
        {"name_popularity", 3}}}};
  return schema;
}

std::size_t ProfileSchema::cell_count() const {
  std::size_t n = 1;
  for (const auto& d : dimensions) n *= static_cast<std::size_t>(d.cardinality);
  return n;
}

bool IsValidProfile(const SimilarityProfile& x, const ProfileSchema& schema) {
  if (x.schema_version != schema.version) return false;
  for (std::size_t d = 0; d < kProfileDims; ++d) {
    if (x.levels[d] >= schema.dimensions[d].cardinality) return false;
  }
  return true;
}

std::size_t ProfileIndex(const SimilarityProfile& x, const ProfileSchema& schema) {
  if (!IsValidProfile(x, schema)) {
    throw Error(Errc::kOutOfRange, "profile levels exceed schema cardinalities");
  }
  std::size_t index = 0;
  for (std::size_t d = 0; d < kProfileDims; ++d) {
    index = index * static_cast<std::size_t>(schema.dimensions[d].cardinality) + x.levels[d];
  }
  return index;
}

SimilarityProfile ProfileUnindex(std::size_t index, const ProfileSchema& schema) {
  if (index >= schema.cell_count()) {
    throw Error(Errc::kOutOfRange,
                "profile index " + std::to_string(index) + " is outside the schema");
  }
  SimilarityProfile x;
  x.schema_version = schema.version;
  for (std::size_t d = kProfileDims; d-- > 0;) {
    const auto card = static_cast<std::size_t>(schema.dimensions[d].cardinality);
    x.levels[d] = static_cast<std::uint8_t>(index % card);
    index /= card;
  }
  return x;
}

ReferenceFeatures ExtractFeatures(const CitationRecord& record,
                                  std::uint32_t position) {
  ReferenceFeatures f;
  for (std::string& token : text::Tokenize(record.title)) {
    if (token.size() < 2 || text::IsStopword(token)) continue;
    f.title_tokens.push_back(std::move(token));
  }
  f.title_tokens = text::SortedUnique(std::move(f.title_tokens));

  if (record.journal) f.journal = text::NormalizePhrase(*record.journal);

  for (std::size_t p = 0; p < record.authors.size(); ++p) {
    if (p == position) continue;
    f.coauthors.push_back(record.authors[p].name.last);
  }
  f.coauthors = text::SortedUnique(std::move(f.coauthors));

  for (const std::string& s : record.subjects) {
    std::string norm = text::NormalizePhrase(s);
    if (!norm.empty()) f.subjects.push_back(std::move(norm));
  }
  f.subjects = text::SortedUnique(std::move(f.subjects));

  if (record.language) f.language = text::FoldAlnum(*record.language);

  const AuthorEntry& author = record.authors.at(position);
  if (author.affiliation) {
    f.affiliation_tokens = text::SortedUnique(text::Tokenize(*author.affiliation));
  }
  if (author.email) f.email = text::FoldLower(text::Trim(*author.email));
  f.middle_initial = author.name.middle_initial;
  f.suffix = author.name.suffix;
  return f;
}

std::uint8_t AffiliationLevel(const std::vector<std::string>& a,
                              const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0;
  const std::size_t shared = text::SortedIntersectionSize(a, b);
  const double jaccard =
      static_cast<double>(shared) / static_cast<double>(a.size() + b.size() - shared);
  if (jaccard < 0.2) return 0;
  if (jaccard <= 0.6) return 1;
  return 2;
}

SimilarityProfile CompareFeatures(const ReferenceFeatures& a,
                                  const ReferenceFeatures& b,
                                  int popularity_bin) {
  SimilarityProfile x;
  x.levels[kTitle] = Capped(text::SortedIntersectionSize(a.title_tokens, b.title_tokens), 3);
  x.levels[kJournal] = (!a.journal.empty() && a.journal == b.journal) ? 1 : 0;
  x.levels[kCoauthor] = Capped(text::SortedIntersectionSize(a.coauthors, b.coauthors), 2);
  x.levels[kSubject] = Capped(text::SortedIntersectionSize(a.subjects, b.subjects), 2);
  x.levels[kLanguage] =
      TriState(a.language, b.language, !a.language.empty(), !b.language.empty());
  x.levels[kAffiliation] = AffiliationLevel(a.affiliation_tokens, b.affiliation_tokens);
  x.levels[kEmail] = TriState(a.email, b.email, !a.email.empty(), !b.email.empty());
  x.levels[kMiddleInitial] =
      TriState(a.middle_initial, b.middle_initial, a.middle_initial.has_value(),
               b.middle_initial.has_value());
  x.levels[kSuffix] =
      TriState(a.suffix, b.suffix, a.suffix.has_value(), b.suffix.has_value());
  x.levels[kNamePopularity] = static_cast<std::uint8_t>(std::clamp(popularity_bin, 0, 2));
  return x;
}

FeatureTable::FeatureTable(const Corpus& corpus) {
  features_.reserve(corpus.references().size());
  for (const AuthorReference& ref : corpus.references()) {
    features_.push_back(ExtractFeatures(corpus.record_of(ref), ref.ref_id.position));
  }
}

SimilarityProfile ComputeProfile(const Corpus& corpus, const FeatureTable& features,
                                 std::size_t a, std::size_t b) {
  const auto& refs = corpus.references();
  if (refs[a].block_key != refs[b].block_key) {
    throw Error(Errc::kBlockMismatch, refs[a].ref_id.ToString() + " is in block '" +
                                          refs[a].block_key + "' but " +
                                          refs[b].ref_id.ToString() + " is in '" +
                                          refs[b].block_key + "'");
  }
  if (a == b) {
    throw Error(Errc::kSelfPair, "cannot compare " + refs[a].ref_id.ToString() + " with itself");
  }
  const int bin = corpus.blocks()[corpus.block_of(a)].popularity_bin;
  return CompareFeatures(features[a], features[b], bin);
}

SimilarityProfile ComputeProfile(const Corpus& corpus, std::size_t a, std::size_t b) {
  const auto& refs = corpus.references();
  if (refs[a].block_key != refs[b].block_key) {
    throw Error(Errc::kBlockMismatch, "references are in different blocks");
  }
  if (a == b) throw Error(Errc::kSelfPair, "cannot compare a reference with itself");
  const int bin = corpus.blocks()[corpus.block_of(a)].popularity_bin;
  return CompareFeatures(ExtractFeatures(corpus.record_of(refs[a]), refs[a].ref_id.position),
                         ExtractFeatures(corpus.record_of(refs[b]), refs[b].ref_id.position),
                         bin);
}

}  // namespace namesake
