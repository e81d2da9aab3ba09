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

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace namesake::text {

// Lowercases ASCII, folds Latin-1 / Latin Extended-A letters to their ASCII
// base ("é" -> "e", "ß" -> "ss") and turns Latin-1 punctuation into spaces.
// Code points without a fold are copied through unchanged.
std::string FoldLower(std::string_view s);

// FoldLower, then keep only [a-z0-9] and unfoldable non-ASCII bytes.
std::string FoldAlnum(std::string_view s);

// FoldLower, trim, and collapse every run of non-alphanumerics into one space.
std::string NormalizePhrase(std::string_view s);

// Alphanumeric tokens of FoldLower(s), in order of appearance.
std::vector<std::string> Tokenize(std::string_view s);

std::string_view Trim(std::string_view s);

bool IsStopword(std::string_view token);
std::span<const std::string_view> Stopwords();

// Sorted, deduplicated copy.
std::vector<std::string> SortedUnique(std::vector<std::string> v);

// Size of the intersection of two sorted, deduplicated ranges.
std::size_t SortedIntersectionSize(std::span<const std::string> a,
                                   std::span<const std::string> b);

}  // namespace namesake::text
