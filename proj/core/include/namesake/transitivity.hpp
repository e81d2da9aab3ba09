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
#include <string>
#include <vector>

#include "namesake/pair_matrix.hpp"

namespace namesake {

// A triplet whose two high edges (i,j) and (j,k) force a lower bound on the
// low edge (i,k) that it misses by more than delta.
struct TripletViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  // P_ij + P_jk - 1 - P_ik at detection time.
  double magnitude = 0.0;

  friend bool operator==(const TripletViolation&, const TripletViolation&) = default;
};

struct RepairConfig {
  double delta = 0.05;
  int max_passes = 10;
  // Multiplies the low edge's weight from the second pass onward.
  double low_weight_factor = 0.5;
};

// Validates ranges; throws Error(kDomainError).
void ValidateRepairConfig(const RepairConfig& config);

// Every triplet with P_ij + P_jk - 1 > P_ik + delta, where (i,k) is bound to
// the triplet's smallest edge. Sorted by descending magnitude, then by the
// triplet's index order.
std::vector<TripletViolation> DetectViolations(const PairProbabilityMatrix& m, double delta);

struct TripletRepair {
  double q_ij = 0.0;
  double q_jk = 0.0;
  double q_ik = 0.0;
  // Lagrange multiplier of the active constraint; <= 0 means no change.
  double lambda = 0.0;
};

// Minimizes W_ij (P_ij-Q_ij)^2 + W_jk (P_jk-Q_jk)^2 + W_ik (P_ik-Q_ik)^2
// subject to Q_ik = Q_ij + Q_jk - 1. Inputs are returned unchanged when the
// constraint is inactive. Throws Error(kDomainError) on nonpositive weights.
TripletRepair RepairTriplet(double p_ij, double p_jk, double p_ik, double w_ij,
                            double w_jk, double w_ik);

// 1 / (p (1 - p)).
double InverseVarianceWeight(double p);

struct RepairPass {
  std::size_t violations_found = 0;
  std::size_t repairs_applied = 0;
  // True when the plain sweep ended with more violations than it started
  // with and was replayed with per-repair guarding.
  bool guarded = false;
  // Repairs skipped by the guard because they would have raised the count.
  std::size_t repairs_rejected = 0;
  // Largest Q_ij + Q_jk - 1 - Q_ik observed right after a repair in this pass.
  double max_post_repair_excess = 0.0;
};

struct RepairReport {
  std::string block_key;
  std::vector<RepairPass> passes;
  // Violation count from every detection sweep, including the final one.
  std::vector<std::size_t> violation_counts;
  std::size_t residual_violations = 0;
  bool converged = true;

  std::size_t passes_with_repairs() const;
};

// Repairs violations in place, sweep by sweep, until a sweep finds none or
// max_passes sweeps have repaired. Never throws for non-convergence.
//
// A repair moves edges shared with neighbouring triplets and can create new
// violations there. If a sweep ends with more violations than it found, the
// block is restored and the sweep replayed, this time skipping any repair
// that would push the running count above the sweep's starting count. The
// violation count is therefore non-increasing from sweep to sweep.
RepairReport RepairBlock(PairProbabilityMatrix& m, const RepairConfig& config = {});

}  // namespace namesake
