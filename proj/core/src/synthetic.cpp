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

#include "namesake/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "namesake/corpus.hpp"
#include "namesake/error.hpp"
#include "namesake/random.hpp"
#include "namesake/text.hpp"

namespace namesake {
namespace {

using json = nlohmann::json;

constexpr std::array<std::string_view, 40> kSurnames = {
    "García", "Müller",  "Nguyen", "Smith",   "Rossi",   "Kowalski", "Novák",
    "Dubois", "Silva",   "Jensen", "O'Brien", "Tanaka",  "Kim",      "Patel",
    "Cohen",  "Ivanov",  "Larsen", "Moreau",  "Schmidt", "López",    "Chen",
    "Wang",   "Singh",   "Yılmaz", "Nowak",   "Horváth", "Costa",    "Fischer",
    "Bianchi", "Hansen", "Ferreira", "Suzuki", "Park",   "Ali",      "Martin",
    "Brown",  "Jones",   "Lee",    "Wilson",  "Taylor",
};

constexpr std::array<std::array<std::string_view, 7>, 8> kFirstNames = {{
    {"John", "James", "Jane", "José", "Julia", "Jun", "Jacob"},
    {"Maria", "Michael", "Mei", "Marco", "Max", "Miriam", "Mateo"},
    {"Anna", "Ahmed", "Alex", "Aiko", "Amir", "Ana", "Arjun"},
    {"Sara", "Samuel", "Sofia", "Sanjay", "Stefan", "Soo", "Selin"},
    {"Li", "Lucas", "Laura", "Leo", "Lena", "Luis", "Lars"},
    {"Kim", "Karl", "Kenji", "Kate", "Kofi", "Kai", "Katya"},
    {"David", "Daniel", "Diana", "Dmitri", "Dong", "Dora", "Dev"},
    {"Robert", "Rosa", "Raj", "Ruth", "Ryo", "Rafael", "Rina"},
}};

constexpr std::array<std::string_view, 32> kSyllables = {
    "ka", "lo", "mi", "ren", "tor", "ba", "sel", "qui", "dra", "pho",
    "nex", "vi", "gal", "tri", "cor", "sul", "mon", "pel", "zar", "fen",
    "lu", "tes", "nor", "vel", "ami", "bor", "cyt", "dex", "gen", "hep",
    "ost", "ply",
};

constexpr std::array<std::string_view, 24> kGenericWords = {
    "analysis",  "model",     "effects",  "approach", "patients", "data",
    "system",    "evaluation", "response", "methods", "outcomes", "network",
    "structure", "dynamics",  "role",     "cells",    "treatment", "review",
    "factors",   "imaging",   "control",  "expression", "risk",   "design",
};

constexpr std::array<std::string_view, 8> kTitleGlue = {
    "of", "the", "in", "and", "for", "with", "a", "on",
};

constexpr std::array<std::string_view, 5> kLanguages = {"eng", "fre", "ger", "spa", "jpn"};

std::string Capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

template <typename T>
void Shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.Uniform(i)]);
}

std::vector<std::string> MakeVocabulary(std::size_t count, Rng& rng) {
  std::set<std::string> seen;
  std::vector<std::string> words;
  while (words.size() < count) {
    std::string w;
    const std::size_t parts = 2 + rng.Uniform(2);
    for (std::size_t p = 0; p < parts; ++p) w += kSyllables[rng.Uniform(kSyllables.size())];
    if (seen.insert(w).second) words.push_back(std::move(w));
  }
  return words;
}

// `count` distinct entries of `pool`.
std::vector<std::string> Sample(const std::vector<std::string>& pool, std::size_t count,
                                Rng& rng) {
  std::vector<std::size_t> idx(pool.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Shuffle(idx, rng);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(count, idx.size()); ++i) out.push_back(pool[idx[i]]);
  return out;
}

struct Author {
  std::string last;
  std::string first;
  std::string middle;
  std::string suffix;
  std::string email;
  std::size_t team = 0;
  std::string block;
};

struct Team {
  std::vector<std::size_t> members;
  std::vector<std::string> vocabulary;
  std::vector<std::string> journals;
  std::vector<std::string> subjects;
  std::string affiliation;
  std::string affiliation_short;
  std::string language;
};

}  // namespace

SyntheticCorpus GenerateSyntheticCorpus(const SyntheticOptions& options) {
  if (options.keys == 0 || options.authors < options.keys) {
    throw Error(Errc::kInvalidInput, "synthetic corpus needs authors >= keys > 0");
  }
  Rng rng(options.seed);
  const std::vector<std::string> vocabulary = MakeVocabulary(900, rng);

  std::vector<std::string> surnames;
  for (std::size_t k = 0; k < options.keys; ++k) {
    if (k < kSurnames.size()) {
      surnames.emplace_back(kSurnames[k]);
    } else {
      surnames.push_back(Capitalize(vocabulary[k]) + "son");
    }
  }

  std::vector<Author> authors(options.authors);
  for (std::size_t a = 0; a < options.authors; ++a) {
    const std::size_t key = a % options.keys;
    Author& au = authors[a];
    au.last = surnames[key];
    const auto& pool = kFirstNames[key % kFirstNames.size()];
    au.first = std::string(pool[rng.Uniform(pool.size())]);
    if (rng.Bernoulli(0.75)) au.middle = std::string(1, static_cast<char>('A' + rng.Uniform(26)));
    if (rng.Bernoulli(0.04)) au.suffix = "Jr.";
    const NameParts name = NormalizeName(au.last, au.first, au.middle, au.suffix);
    au.block = BlockKey(name);
    au.email = name.first + "." + (name.middle_initial ? std::string(1, *name.middle_initial) + "." : "") +
               name.last + std::to_string(a) + "@";
  }

  // Teams of four drawn from one "slot" of authors, so members never share a key.
  std::vector<Team> teams;
  const std::size_t slots = (options.authors + options.keys - 1) / options.keys;
  for (std::size_t slot = 0; slot < slots; ++slot) {
    std::vector<std::size_t> slot_authors;
    for (std::size_t k = 0; k < options.keys; ++k) {
      const std::size_t a = slot * options.keys + k;
      if (a < options.authors) slot_authors.push_back(a);
    }
    Shuffle(slot_authors, rng);
    for (std::size_t i = 0; i < slot_authors.size(); i += 4) {
      Team team;
      for (std::size_t j = i; j < std::min(i + 4, slot_authors.size()); ++j) {
        team.members.push_back(slot_authors[j]);
      }
      teams.push_back(std::move(team));
    }
  }

  std::vector<std::string> journal_pool;
  for (std::size_t j = 0; j < 40; ++j) {
    journal_pool.push_back("Journal of " + Capitalize(vocabulary[100 + j]) + " " +
                           Capitalize(vocabulary[200 + j % 17]));
  }
  std::vector<std::string> subject_pool;
  for (std::size_t s = 0; s < 160; ++s) {
    subject_pool.push_back(Capitalize(vocabulary[300 + s]) + " " + vocabulary[500 + s % 53]);
  }

  for (std::size_t t = 0; t < teams.size(); ++t) {
    Team& team = teams[t];
    team.vocabulary = Sample(vocabulary, 25, rng);
    team.journals = Sample(journal_pool, 3, rng);
    team.subjects = Sample(subject_pool, 8, rng);
    const std::string field = Capitalize(vocabulary[rng.Uniform(vocabulary.size())]);
    const std::string place = Capitalize(vocabulary[rng.Uniform(vocabulary.size())]);
    team.affiliation = "Department of " + field + ", University of " + place;
    team.affiliation_short = "Dept. " + field + ", Univ. " + place;
    team.language = rng.Bernoulli(0.85) ? "eng" : std::string(kLanguages[1 + rng.Uniform(4)]);
    const std::string domain = text::FoldAlnum(place) + ".edu";
    for (std::size_t a : team.members) {
      authors[a].team = t;
      authors[a].email += domain;
    }
  }

  std::vector<std::vector<std::string>> refs_of(options.authors);
  std::ostringstream jsonl;
  for (std::size_t c = 0; c < options.citations; ++c) {
    const Team& team = teams[rng.Uniform(teams.size())];
    std::vector<std::size_t> members = team.members;
    Shuffle(members, rng);
    const std::size_t count = std::min(members.size(), 2 + rng.Uniform(3));
    members.resize(count);
    if (teams.size() > 1 && rng.Bernoulli(options.guest_rate)) {
      const Team* other = &team;
      while (other == &team) other = &teams[rng.Uniform(teams.size())];
      members.push_back(other->members[rng.Uniform(other->members.size())]);
    }
    Shuffle(members, rng);

    std::vector<std::string> content;
    for (std::size_t i = 0; i < 5; ++i) {
      content.push_back(team.vocabulary[rng.Uniform(team.vocabulary.size())]);
    }
    for (std::size_t i = 0; i < 2; ++i) {
      content.emplace_back(kGenericWords[rng.Uniform(kGenericWords.size())]);
    }
    std::vector<std::string> kept;
    for (auto& w : content) {
      if (!rng.Bernoulli(options.token_dropout)) kept.push_back(std::move(w));
    }
    if (kept.empty()) kept.push_back(team.vocabulary[0]);
    std::string title;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (i > 0) {
        title += ' ';
        if (rng.Bernoulli(0.4)) {
          title += kTitleGlue[rng.Uniform(kTitleGlue.size())];
          title += ' ';
        }
      }
      title += kept[i];
    }
    title = Capitalize(title);

    std::vector<std::string> subjects;
    for (const std::string& s : Sample(team.subjects, 4, rng)) {
      if (!rng.Bernoulli(options.token_dropout)) subjects.push_back(s);
    }

    char id_buf[32];
    std::snprintf(id_buf, sizeof(id_buf), "syn-%05zu", c);
    json record = {
        {"id", id_buf},
        {"title", title},
        {"journal", rng.Bernoulli(0.05) ? json(nullptr)
                                        : json(team.journals[rng.Uniform(team.journals.size())])},
        {"subjects", subjects},
        {"language", rng.Bernoulli(0.10) ? json(nullptr) : json(team.language)},
        {"year", 1995 + static_cast<int>(rng.Uniform(25))},
    };
    json author_list = json::array();
    for (std::size_t p = 0; p < members.size(); ++p) {
      const Author& au = authors[members[p]];
      const Team& home = teams[au.team];
      json entry = {{"last", rng.Bernoulli(0.1) ? text::FoldLower(au.last) : au.last},
                    {"first", au.first}};
      if (!au.middle.empty() && !rng.Bernoulli(options.token_dropout)) entry["middle"] = au.middle;
      if (!au.suffix.empty()) entry["suffix"] = au.suffix;
      if (!rng.Bernoulli(options.missing_affiliation)) {
        entry["affiliation"] = rng.Bernoulli(0.3) ? home.affiliation_short : home.affiliation;
      }
      if (!rng.Bernoulli(options.missing_email)) entry["email"] = au.email;
      author_list.push_back(std::move(entry));
      refs_of[members[p]].push_back(RefId{id_buf, static_cast<std::uint32_t>(p)}.ToString());
    }
    record["authors"] = std::move(author_list);
    jsonl << record.dump() << '\n';
  }

  SyntheticCorpus out;
  out.jsonl = jsonl.str();
  for (std::size_t a = 0; a < options.authors; ++a) {
    if (refs_of[a].empty()) continue;
    std::sort(refs_of[a].begin(), refs_of[a].end());
    out.gold.push_back({authors[a].block, a, std::move(refs_of[a])});
  }
  std::sort(out.gold.begin(), out.gold.end(), [](const GoldCluster& x, const GoldCluster& y) {
    return std::tie(x.block, x.cluster_id) < std::tie(y.block, y.cluster_id);
  });
  return out;
}

}  // namespace namesake
