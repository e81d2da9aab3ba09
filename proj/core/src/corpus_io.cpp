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

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "json.hpp"
#include "namesake/corpus.hpp"
#include "namesake/error.hpp"
#include "namesake/text.hpp"

namespace namesake {
namespace {

using json = nlohmann::json;

[[noreturn]] void Invalid(std::size_t line, const std::string& what) {
  throw Error(Errc::kInvalidInput, "line " + std::to_string(line) + ": " + what);
}

// Missing, null and blank strings are all "absent".
std::optional<std::string> OptionalString(const json& obj, const char* field,
                                          std::size_t line) {
  const auto it = obj.find(field);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) Invalid(line, std::string("field '") + field + "' must be a string");
  const std::string& s = it->get_ref<const std::string&>();
  if (text::Trim(s).empty()) return std::nullopt;
  return s;
}

std::string StringOrEmpty(const json& obj, const char* field, std::size_t line) {
  return OptionalString(obj, field, line).value_or(std::string());
}

CitationRecord ParseRecord(const json& obj, std::size_t line) {
  if (!obj.is_object()) Invalid(line, "expected a JSON object");
  CitationRecord record;

  const auto id = obj.find("id");
  if (id == obj.end() || !id->is_string() || text::Trim(id->get_ref<const std::string&>()).empty()) {
    Invalid(line, "field 'id' must be a non-empty string");
  }
  record.id = std::string(text::Trim(id->get_ref<const std::string&>()));
  record.title = StringOrEmpty(obj, "title", line);
  record.journal = OptionalString(obj, "journal", line);
  record.language = OptionalString(obj, "language", line);

  if (const auto year = obj.find("year"); year != obj.end() && !year->is_null()) {
    if (!year->is_number_integer()) Invalid(line, "field 'year' must be an integer");
    record.year = year->get<int>();
  }

  if (const auto subjects = obj.find("subjects");
      subjects != obj.end() && !subjects->is_null()) {
    if (!subjects->is_array()) Invalid(line, "field 'subjects' must be an array");
    for (const json& s : *subjects) {
      if (!s.is_string()) Invalid(line, "subjects must be strings");
      std::string norm = text::NormalizePhrase(s.get_ref<const std::string&>());
      if (norm.empty()) continue;
      if (std::find(record.subjects.begin(), record.subjects.end(), norm) ==
          record.subjects.end()) {
        record.subjects.push_back(std::move(norm));
      }
    }
  }

  const auto authors = obj.find("authors");
  if (authors == obj.end() || !authors->is_array() || authors->empty()) {
    Invalid(line, "field 'authors' must be a non-empty array");
  }
  for (const json& a : *authors) {
    if (!a.is_object()) Invalid(line, "authors must be objects");
    AuthorEntry entry;
    try {
      entry.name = NormalizeName(StringOrEmpty(a, "last", line),
                                 StringOrEmpty(a, "first", line),
                                 StringOrEmpty(a, "middle", line),
                                 StringOrEmpty(a, "suffix", line));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(line) + ": citation '" +
                                record.id + "': " + e.what());
    }
    entry.affiliation = OptionalString(a, "affiliation", line);
    if (auto email = OptionalString(a, "email", line)) {
      entry.email = std::string(text::Trim(*email));
    }
    record.authors.push_back(std::move(entry));
  }
  return record;
}

json OptionalToJson(const std::optional<std::string>& v) {
  return v ? json(*v) : json(nullptr);
}

json RecordToJson(const CitationRecord& record) {
  json authors = json::array();
  for (const AuthorEntry& a : record.authors) {
    authors.push_back({
        {"last", a.name.last},
        {"first", a.name.first},
        {"middle", a.name.middle_initial ? json(std::string(1, *a.name.middle_initial))
                                         : json(nullptr)},
        {"suffix", OptionalToJson(a.name.suffix)},
        {"affiliation", OptionalToJson(a.affiliation)},
        {"email", OptionalToJson(a.email)},
    });
  }
  return {
      {"id", record.id},
      {"title", record.title},
      {"journal", OptionalToJson(record.journal)},
      {"authors", std::move(authors)},
      {"subjects", record.subjects},
      {"language", OptionalToJson(record.language)},
      {"year", record.year ? json(*record.year) : json(nullptr)},
  };
}

}  // namespace

std::vector<CitationRecord> ReadCitationsJsonl(std::istream& in) {
  std::vector<CitationRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::Trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      Invalid(line_no, std::string("malformed JSON: ") + e.what());
    }
    records.push_back(ParseRecord(obj, line_no));
  }
  return records;
}

std::vector<CitationRecord> ReadCitationsJsonlFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path + "' for reading");
  return ReadCitationsJsonl(in);
}

void SaveCorpus(const Corpus& corpus, const std::string& path) {
  json records = json::array();
  for (const auto& r : corpus.records()) records.push_back(RecordToJson(r));
  json blocks = json::array();
  for (const Block& b : corpus.blocks()) {
    blocks.push_back({{"key", b.key},
                      {"size", b.refs.size()},
                      {"popularity_bin", b.popularity_bin}});
  }
  const json doc = {
      {"format_version", kCorpusFormatVersion},
      {"popularity_thresholds", {corpus.thresholds().t1, corpus.thresholds().t2}},
      {"records", std::move(records)},
      {"blocks", std::move(blocks)},
  };
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot open '" + path + "' for writing");
  out << doc.dump(1) << '\n';
  if (!out) throw Error(Errc::kIo, "failed writing '" + path + "'");
}

Corpus LoadCorpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path + "' for reading");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kInvalidInput, "corpus '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("format_version") ||
      !doc["format_version"].is_number_integer()) {
    throw Error(Errc::kInvalidInput, "corpus '" + path + "' has no format_version");
  }
  if (doc["format_version"].get<int>() != kCorpusFormatVersion) {
    throw Error(Errc::kFormatVersionUnsupported,
                "corpus format_version " + doc["format_version"].dump() + " is not supported");
  }
  PopularityThresholds thresholds;
  if (const auto t = doc.find("popularity_thresholds");
      t != doc.end() && t->is_array() && t->size() == 2) {
    thresholds.t1 = (*t)[0].get<std::size_t>();
    thresholds.t2 = (*t)[1].get<std::size_t>();
  }
  const auto records_it = doc.find("records");
  if (records_it == doc.end() || !records_it->is_array()) {
    throw Error(Errc::kInvalidInput, "corpus '" + path + "' has no records array");
  }
  std::vector<CitationRecord> records;
  records.reserve(records_it->size());
  std::size_t index = 0;
  for (const json& r : *records_it) records.push_back(ParseRecord(r, ++index));
  return Corpus(std::move(records), thresholds);
}

}  // namespace namesake
