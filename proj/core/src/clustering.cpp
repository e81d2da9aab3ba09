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

#include "namesake/clustering.hpp"

#include <algorithm>
#include <cmath>

namespace namesake {
namespace {

// Clamped like every stored posterior so hand-built matrices stay finite.
double Logit(double q) {
  q = std::clamp(q, 1e-6, 1.0 - 1e-6);
  return std::log(q / (1.0 - q));
}

double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

Linkage LinkageOdds(std::span<const std::size_t> a, std::span<const std::size_t> b,
                    const PairProbabilityMatrix& m) {
  double sum = 0.0;
  for (std::size_t i : a) {
    for (std::size_t j : b) sum += Logit(m(i, j));
  }
  const double mean = sum / static_cast<double>(a.size() * b.size());
  return {std::exp(mean), Sigmoid(mean)};
}

Clustering Agglomerate(const PairProbabilityMatrix& m, double stop_threshold) {
  const std::size_t n = m.size();
  Clustering out;
  out.block_key = m.block_key();

  // Clusters live in the slot of their minimum member, so iterating slots in
  // increasing order visits pairs in tie-break order.
  std::vector<std::vector<std::size_t>> members(n);
  std::vector<bool> active(n, true);
  std::vector<double> logit_sum(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = {i};
    for (std::size_t j = i + 1; j < n; ++j) {
      const double l = Logit(m(i, j));
      logit_sum[i * n + j] = l;
      logit_sum[j * n + i] = l;
    }
  }

  for (std::size_t remaining = n; remaining > 1; --remaining) {
    double best_prob = -1.0;
    std::size_t best_a = n;
    std::size_t best_b = n;
    for (std::size_t a = 0; a < n; ++a) {
      if (!active[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!active[b]) continue;
        const double cross =
            static_cast<double>(members[a].size() * members[b].size());
        const double prob = Sigmoid(logit_sum[a * n + b] / cross);
        if (prob > best_prob) {
          best_prob = prob;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best_prob < stop_threshold) break;

    out.merges.push_back({members[best_a], members[best_b], best_prob});
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == best_a || c == best_b) continue;
      const double merged = logit_sum[best_a * n + c] + logit_sum[best_b * n + c];
      logit_sum[best_a * n + c] = merged;
      logit_sum[c * n + best_a] = merged;
    }
    auto& target = members[best_a];
    target.insert(target.end(), members[best_b].begin(), members[best_b].end());
    std::sort(target.begin(), target.end());
    members[best_b].clear();
    active[best_b] = false;
  }

  for (std::size_t a = 0; a < n; ++a) {
    if (active[a]) out.clusters.push_back(std::move(members[a]));
  }
  return out;
}

}  // namespace namesake
