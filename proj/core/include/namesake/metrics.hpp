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
#include <cstdint>
#include <string>
#include <vector>

namespace namesake {

// A clustering of opaque reference ids. Clusters must be disjoint.
using Partition = std::vector<std::vector<std::string>>;

struct PairConfusion {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t s = 0;

  friend bool operator==(const PairConfusion&, const PairConfusion&) = default;
};

struct ContingencyCell {
  std::size_t generated = 0;  // row: predicted cluster
  std::size_t gold = 0;       // column: gold cluster
  std::uint64_t count = 0;

  friend bool operator==(const ContingencyCell&, const ContingencyCell&) = default;
};

// Sparse contingency table between a predicted and a gold partition.
struct ContingencyTable {
  std::vector<ContingencyCell> cells;  // non-zero n_ij, sorted by (row, col)
  std::vector<std::uint64_t> n_i;      // predicted cluster sizes
  std::vector<std::uint64_t> g_j;      // gold cluster sizes
  std::uint64_t total = 0;             // N
  std::size_t m_gold = 0;
  std::size_t m_gen = 0;
  std::size_t m_cor = 0;  // predicted clusters equal to some gold cluster
};

// Throws Error(kReferenceSetMismatch) if the partitions cover different
// reference sets or either repeats a reference.
ContingencyTable BuildContingency(const Partition& pred, const Partition& gold);

PairConfusion ConfusionFromTable(const ContingencyTable& t);
PairConfusion ComputePairConfusion(const Partition& pred, const Partition& gold);

struct PairwiseScores {
  double accuracy = 0.0;
  double pp = 0.0;
  double pr = 0.0;
  double pf1 = 0.0;
};

// pp = 1 when TP+FP = 0, pr = 1 when TP+FN = 0, pf1 = 0 when pp+pr = 0.
// Throws Error(kEmptyInput) when S = 0.
PairwiseScores ComputePairwiseScores(const PairConfusion& c);

struct PurityScores {
  double acp = 0.0;
  double aap = 0.0;
  double k = 0.0;
};

// ACP = sum n_ij^2 / n_i / N, AAP = sum n_ij^2 / g_j / N, K = sqrt(ACP AAP).
PurityScores ComputePurity(const ContingencyTable& t);

struct BCubedScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Per-reference values, in the order of `ids`.
  std::vector<std::string> ids;
  std::vector<double> per_ref_precision;
  std::vector<double> per_ref_recall;
};

BCubedScores ComputeBCubed(const Partition& pred, const Partition& gold);

struct EvaluationReport {
  PairConfusion confusion;
  ContingencyTable table;
  // False when S = 0 (a single reference); pairwise scores are then zero.
  bool pairwise_defined = false;
  PairwiseScores pairwise;
  PurityScores purity;
  double b3_precision = 0.0;
  double b3_recall = 0.0;
  double b3_f1 = 0.0;
};

// Every measure at once. Throws Error(kEmptyInput) for empty partitions.
EvaluationReport Evaluate(const Partition& pred, const Partition& gold);

}  // namespace namesake
