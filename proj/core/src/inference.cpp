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

#include "namesake/inference.hpp"

#include <algorithm>
#include <cmath>

#include "namesake/error.hpp"

namespace namesake {

double Posterior(double r, double prior) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(Errc::kDomainError, "likelihood ratio must be positive and finite");
  }
  if (!(prior > 0.0 && prior < 1.0)) {
    throw Error(Errc::kDomainError, "prior must lie strictly between 0 and 1");
  }
  const double joint = r * prior;
  return std::clamp(joint / (joint + (1.0 - prior)), kMinPosterior, kMaxPosterior);
}

BlockPrior EstimatePrior(std::string block_key, std::span<const double> r_values,
                         const PriorOptions& options) {
  BlockPrior out;
  out.block_key = std::move(block_key);
  double p = std::clamp(options.p0, kMinPrior, kMaxPrior);
  out.prior = p;
  if (r_values.empty()) return out;
  for (int it = 1; it <= options.max_iter; ++it) {
    double sum = 0.0;
    for (double r : r_values) sum += Posterior(r, p);
    const double next =
        std::clamp(sum / static_cast<double>(r_values.size()), kMinPrior, kMaxPrior);
    const double delta = std::abs(next - p);
    p = next;
    out.iterations_used = it;
    if (delta < options.tol) break;
  }
  out.prior = p;
  return out;
}

std::vector<double> BlockRatios(const Block& block, const Corpus& corpus,
                                const FeatureTable& features, const RatioModel& model) {
  const std::size_t n = block.refs.size();
  std::vector<double> r(PairProbabilityMatrix::PairCount(n));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      r[k++] = RValue(model, ComputeProfile(corpus, features, block.refs[i], block.refs[j]));
    }
  }
  return r;
}

BlockPrior EstimatePrior(const Block& block, const Corpus& corpus,
                         const FeatureTable& features, const RatioModel& model,
                         const PriorOptions& options) {
  const std::vector<double> r = BlockRatios(block, corpus, features, model);
  return EstimatePrior(block.key, r, options);
}

PairProbabilityMatrix MatrixFromRatios(const Block& block, const Corpus& corpus,
                                       std::span<const double> r_values, double prior) {
  std::vector<std::string> ids;
  ids.reserve(block.refs.size());
  for (std::size_t ref : block.refs) ids.push_back(corpus.references()[ref].ref_id.ToString());
  PairProbabilityMatrix m(block.key, std::move(ids));
  if (r_values.size() != m.pair_count()) {
    throw Error(Errc::kInvalidInput, "r-value count does not match block size");
  }
  const std::size_t n = m.size();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, Posterior(r_values[k++], prior));
  }
  return m;
}

PairProbabilityMatrix ScoreBlock(const Block& block, const Corpus& corpus,
                                 const FeatureTable& features, const RatioModel& model,
                                 double prior) {
  return MatrixFromRatios(block, corpus, BlockRatios(block, corpus, features, model), prior);
}

}  // namespace namesake
