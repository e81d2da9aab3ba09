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

#include "namesake/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <utility>

#include "namesake/error.hpp"
#include "namesake/text.hpp"

namespace namesake {
namespace {

std::optional<std::string> CanonicalSuffix(std::string_view raw) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 10>
      kSuffixes = {{{"jr", "jr"},
                    {"junior", "jr"},
                    {"sr", "sr"},
                    {"senior", "sr"},
                    {"ii", "ii"},
                    {"2nd", "ii"},
                    {"iii", "iii"},
                    {"3rd", "iii"},
                    {"iv", "iv"},
                    {"4th", "iv"}}};
  const std::string folded = text::FoldAlnum(raw);
  for (const auto& [alias, canonical] : kSuffixes) {
    if (folded == alias) return std::string(canonical);
  }
  return std::nullopt;
}

// Byte length of the UTF-8 sequence starting with `lead`.
std::size_t LeadLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0) return 2;
  if ((lead & 0xF0) == 0xE0) return 3;
  if ((lead & 0xF8) == 0xF0) return 4;
  return 1;
}

}  // namespace

NameParts NormalizeName(std::string_view raw_last, std::string_view raw_first,
                        std::string_view raw_middle,
                        std::string_view raw_suffix) {
  NameParts name;
  name.last = text::FoldAlnum(text::Trim(raw_last));
  if (name.last.empty()) {
    throw Error(Errc::kEmptyLastName,
                "last name '" + std::string(raw_last) + "' is empty after normalization");
  }
  name.first = text::FoldAlnum(raw_first);
  const std::string middle = text::FoldAlnum(raw_middle);
  if (!middle.empty() && static_cast<unsigned char>(middle[0]) < 0x80) {
    name.middle_initial = middle[0];
  }
  name.suffix = CanonicalSuffix(raw_suffix);
  return name;
}

std::string BlockKey(const NameParts& name) {
  std::string key = name.last;
  key.push_back('_');
  if (!name.first.empty()) {
    const std::size_t len =
        std::min(LeadLength(static_cast<unsigned char>(name.first[0])),
                 name.first.size());
    key.append(name.first, 0, len);
  }
  return key;
}

std::string RefId::ToString() const {
  return citation_id + "#" + std::to_string(position);
}

RefId RefId::Parse(std::string_view s) {
  const auto hash = s.rfind('#');
  if (hash == std::string_view::npos || hash + 1 >= s.size()) {
    throw Error(Errc::kInvalidInput,
                "reference id '" + std::string(s) + "' is not of the form <citation>#<position>");
  }
  RefId id;
  id.citation_id = std::string(s.substr(0, hash));
  const std::string_view digits = s.substr(hash + 1);
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), id.position);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(Errc::kInvalidInput,
                "reference id '" + std::string(s) + "' has a malformed position");
  }
  return id;
}

int PopularityBin(std::size_t block_size, const PopularityThresholds& t) {
  if (block_size <= t.t1) return 0;
  if (block_size <= t.t2) return 1;
  return 2;
}

Corpus::Corpus(std::vector<CitationRecord> records,
               PopularityThresholds thresholds)
    : records_(std::move(records)), thresholds_(thresholds) {
  if (thresholds_.t1 > thresholds_.t2) {
    throw Error(Errc::kInvalidInput, "popularity thresholds must satisfy t1 <= t2");
  }
  {
    std::vector<std::string_view> ids;
    ids.reserve(records_.size());
    for (const auto& r : records_) ids.push_back(r.id);
    std::sort(ids.begin(), ids.end());
    const auto dup = std::adjacent_find(ids.begin(), ids.end());
    if (dup != ids.end()) {
      throw Error(Errc::kDuplicateCitationId,
                  "citation id '" + std::string(*dup) + "' appears more than once");
    }
  }

  for (std::size_t r = 0; r < records_.size(); ++r) {
    const CitationRecord& record = records_[r];
    if (record.authors.empty()) {
      throw Error(Errc::kInvalidInput,
                  "citation '" + record.id + "' has no authors");
    }
    for (std::size_t p = 0; p < record.authors.size(); ++p) {
      AuthorReference ref;
      ref.ref_id = RefId{record.id, static_cast<std::uint32_t>(p)};
      ref.name = record.authors[p].name;
      ref.block_key = BlockKey(ref.name);
      ref.record_index = r;
      references_.push_back(std::move(ref));
    }
  }
  std::sort(references_.begin(), references_.end(),
            [](const AuthorReference& a, const AuthorReference& b) {
              return a.ref_id < b.ref_id;
            });

  std::map<std::string_view, std::vector<std::size_t>> grouped;
  for (std::size_t i = 0; i < references_.size(); ++i) {
    grouped[references_[i].block_key].push_back(i);
  }
  block_of_ref_.assign(references_.size(), 0);
  blocks_.reserve(grouped.size());
  for (auto& [key, refs] : grouped) {
    Block block;
    block.key = std::string(key);
    block.popularity_bin = PopularityBin(refs.size(), thresholds_);
    for (std::size_t i : refs) block_of_ref_[i] = blocks_.size();
    block.refs = std::move(refs);
    blocks_.push_back(std::move(block));
  }
}

std::optional<std::size_t> Corpus::find_reference(const RefId& id) const {
  const auto it = std::lower_bound(
      references_.begin(), references_.end(), id,
      [](const AuthorReference& ref, const RefId& key) { return ref.ref_id < key; });
  if (it == references_.end() || it->ref_id != id) return std::nullopt;
  return static_cast<std::size_t>(it - references_.begin());
}

std::vector<Block> BuildBlocks(const std::vector<CitationRecord>& records,
                               PopularityThresholds thresholds) {
  return Corpus(records, thresholds).blocks();
}

}  // namespace namesake
