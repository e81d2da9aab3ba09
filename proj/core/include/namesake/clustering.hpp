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
#include <span>
#include <string>
#include <vector>

#include "namesake/pair_matrix.hpp"

namespace namesake {

struct Linkage {
  double odds = 1.0;
  double prob = 0.5;
};

// Geometric mean of Q/(1-Q) over all cross pairs of two disjoint, non-empty
// clusters (indices into the matrix), and its probability form.
Linkage LinkageOdds(std::span<const std::size_t> a, std::span<const std::size_t> b,
                    const PairProbabilityMatrix& m);

struct MergeRecord {
  std::vector<std::size_t> a;  // cluster with the smaller minimum index
  std::vector<std::size_t> b;
  double prob = 0.0;
};

struct Clustering {
  std::string block_key;
  // Each cluster is sorted; clusters are ordered by their minimum index.
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<MergeRecord> merges;
};

// Greedy agglomeration from singletons: merge the pair with the highest
// linkage probability (ties to the lexicographically smallest pair of
// minimum indices) until the best probability drops below stop_threshold.
Clustering Agglomerate(const PairProbabilityMatrix& m, double stop_threshold = 0.5);

}  // namespace namesake
