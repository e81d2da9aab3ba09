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
#include <vector>

#include "namesake/corpus.hpp"
#include "namesake/pair_matrix.hpp"
#include "namesake/profile.hpp"
#include "namesake/training.hpp"

namespace namesake {

inline constexpr double kMinPosterior = 1e-6;
inline constexpr double kMaxPosterior = 1.0 - 1e-6;
inline constexpr double kMinPrior = 1e-4;
inline constexpr double kMaxPrior = 0.999;

// Bayes: r*p / (r*p + 1 - p), clamped to [1e-6, 1 - 1e-6].
// Throws Error(kDomainError) unless r > 0 and 0 < prior < 1.
double Posterior(double r, double prior);

struct BlockPrior {
  std::string block_key;
  double prior = 0.1;
  int iterations_used = 0;
};

struct PriorOptions {
  double p0 = 0.1;
  double tol = 1e-4;
  int max_iter = 50;
};

// Fixed point of p <- mean_pairs Posterior(r_pair, p), started at p0 and
// clamped to [1e-4, 0.999] at every step. With no pairs, returns p0 after
// zero iterations.
BlockPrior EstimatePrior(std::string block_key, std::span<const double> r_values,
                         const PriorOptions& options = {});
BlockPrior EstimatePrior(const Block& block, const Corpus& corpus,
                         const FeatureTable& features, const RatioModel& model,
                         const PriorOptions& options = {});

// r-values of all block pairs in upper-triangle order.
std::vector<double> BlockRatios(const Block& block, const Corpus& corpus,
                                const FeatureTable& features, const RatioModel& model);

PairProbabilityMatrix MatrixFromRatios(const Block& block, const Corpus& corpus,
                                       std::span<const double> r_values, double prior);

PairProbabilityMatrix ScoreBlock(const Block& block, const Corpus& corpus,
                                 const FeatureTable& features, const RatioModel& model,
                                 double prior);

}  // namespace namesake
