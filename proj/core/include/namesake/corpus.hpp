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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace namesake {

// A normalized personal name. All parts are lowercase ASCII (or unfoldable
// non-Latin text) with punctuation removed.
struct NameParts {
  std::string last;
  std::string first;
  std::optional<char> middle_initial;
  std::optional<std::string> suffix;

  friend bool operator==(const NameParts&, const NameParts&) = default;
};

// Throws Error(kEmptyLastName) when raw_last has no content after trimming.
NameParts NormalizeName(std::string_view raw_last, std::string_view raw_first,
                        std::string_view raw_middle,
                        std::string_view raw_suffix);

// LN-FI key: last name, underscore, first initial (nothing if first is empty).
std::string BlockKey(const NameParts& name);

struct AuthorEntry {
  NameParts name;
  std::optional<std::string> affiliation;
  std::optional<std::string> email;

  friend bool operator==(const AuthorEntry&, const AuthorEntry&) = default;
};

struct CitationRecord {
  std::string id;
  std::string title;
  std::optional<std::string> journal;
  std::vector<AuthorEntry> authors;
  std::vector<std::string> subjects;
  std::optional<std::string> language;
  std::optional<int> year;

  friend bool operator==(const CitationRecord&, const CitationRecord&) = default;
};

// (citation id, author position); orders lexicographically.
struct RefId {
  std::string citation_id;
  std::uint32_t position = 0;

  friend auto operator<=>(const RefId&, const RefId&) = default;
  friend bool operator==(const RefId&, const RefId&) = default;

  // "<citation id>#<position>"
  std::string ToString() const;
  static RefId Parse(std::string_view s);
};

struct AuthorReference {
  RefId ref_id;
  NameParts name;
  std::string block_key;
  std::size_t record_index = 0;
};

struct PopularityThresholds {
  std::size_t t1 = 5;
  std::size_t t2 = 50;

  friend bool operator==(const PopularityThresholds&,
                         const PopularityThresholds&) = default;
};

int PopularityBin(std::size_t block_size, const PopularityThresholds& t);

struct Block {
  std::string key;
  // Indices into Corpus::references(), sorted by ref_id.
  std::vector<std::size_t> refs;
  int popularity_bin = 0;
};

// Immutable blocked corpus. Construction validates ids and partitions every
// author reference into exactly one LN-FI block.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<CitationRecord> records, PopularityThresholds thresholds);

  const std::vector<CitationRecord>& records() const { return records_; }
  const std::vector<AuthorReference>& references() const { return references_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  const PopularityThresholds& thresholds() const { return thresholds_; }

  const CitationRecord& record_of(const AuthorReference& ref) const {
    return records_[ref.record_index];
  }
  const AuthorEntry& author_of(const AuthorReference& ref) const {
    return records_[ref.record_index].authors[ref.ref_id.position];
  }

  // Index of the block containing reference `ref_index`.
  std::size_t block_of(std::size_t ref_index) const {
    return block_of_ref_[ref_index];
  }

  // Lookup by id; nullopt when absent.
  std::optional<std::size_t> find_reference(const RefId& id) const;

 private:
  std::vector<CitationRecord> records_;
  std::vector<AuthorReference> references_;
  std::vector<Block> blocks_;
  std::vector<std::size_t> block_of_ref_;
  PopularityThresholds thresholds_;
};

// Convenience wrapper that returns only the blocks.
std::vector<Block> BuildBlocks(const std::vector<CitationRecord>& records,
                               PopularityThresholds thresholds = {});

// JSON Lines ingestion. Each non-blank line is one citation object; names are
// normalized on the way in. Throws Error(kInvalidInput) with a line number.
std::vector<CitationRecord> ReadCitationsJsonl(std::istream& in);
std::vector<CitationRecord> ReadCitationsJsonlFile(const std::string& path);

inline constexpr int kCorpusFormatVersion = 1;

void SaveCorpus(const Corpus& corpus, const std::string& path);
Corpus LoadCorpus(const std::string& path);

}  // namespace namesake
