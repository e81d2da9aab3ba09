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

#include "namesake/transitivity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>

#include "namesake/error.hpp"
#include "namesake/inference.hpp"

namespace namesake {

void ValidateRepairConfig(const RepairConfig& config) {
  if (!(config.delta > 0.0)) throw Error(Errc::kDomainError, "delta must be positive");
  if (config.max_passes < 0) throw Error(Errc::kDomainError, "max_passes must be >= 0");
  if (!(config.low_weight_factor > 0.0 && config.low_weight_factor <= 1.0)) {
    throw Error(Errc::kDomainError, "low_weight_factor must lie in (0, 1]");
  }
}

namespace {

// Classifies the triplet a < b < c. The smallest edge becomes (i, k); ties
// prefer (a,b), then (a,c), then (b,c).
std::optional<TripletViolation> CheckTriplet(const PairProbabilityMatrix& m, std::size_t a,
                                             std::size_t b, std::size_t c, double delta) {
  const double p_ab = m(a, b);
  const double p_ac = m(a, c);
  const double p_bc = m(b, c);
  TripletViolation v;
  double p_low;
  double p_high1;
  double p_high2;
  if (p_ab <= p_ac && p_ab <= p_bc) {
    v = {a, c, b, 0.0};
    p_low = p_ab;
    p_high1 = p_ac;
    p_high2 = p_bc;
  } else if (p_ac <= p_bc) {
    v = {a, b, c, 0.0};
    p_low = p_ac;
    p_high1 = p_ab;
    p_high2 = p_bc;
  } else {
    v = {b, a, c, 0.0};
    p_low = p_bc;
    p_high1 = p_ab;
    p_high2 = p_ac;
  }
  const double lhs = p_high1 + p_high2 - 1.0;
  if (!(lhs > p_low + delta)) return std::nullopt;
  v.magnitude = lhs - p_low;
  return v;
}

bool IsViolated(const PairProbabilityMatrix& m, std::size_t x, std::size_t y, std::size_t z,
                double delta) {
  std::array<std::size_t, 3> t = {x, y, z};
  std::sort(t.begin(), t.end());
  return CheckTriplet(m, t[0], t[1], t[2], delta).has_value();
}

// Number of violated triplets that share at least one edge with {i, j, k}.
std::size_t CountTouching(const PairProbabilityMatrix& m, std::size_t i, std::size_t j,
                          std::size_t k, double delta) {
  std::size_t count = IsViolated(m, i, j, k, delta) ? 1 : 0;
  for (std::size_t x = 0; x < m.size(); ++x) {
    if (x == i || x == j || x == k) continue;
    count += IsViolated(m, i, j, x, delta) ? 1 : 0;
    count += IsViolated(m, j, k, x, delta) ? 1 : 0;
    count += IsViolated(m, i, k, x, delta) ? 1 : 0;
  }
  return count;
}

// One sweep over `violations`. With `guard`, a repair is undone when it would
// raise the running violation count above the count the sweep started with.
RepairPass Sweep(PairProbabilityMatrix& m, const std::vector<TripletViolation>& violations,
                 const RepairConfig& config, int pass, bool guard) {
  RepairPass stats;
  stats.violations_found = violations.size();
  stats.guarded = guard;
  stats.max_post_repair_excess = -1.0;
  std::size_t running = violations.size();
  for (const TripletViolation& v : violations) {
    const double p_ij = m(v.i, v.j);
    const double p_jk = m(v.j, v.k);
    const double p_ik = m(v.i, v.k);
    double w_ik = InverseVarianceWeight(p_ik);
    if (pass >= 2) w_ik *= config.low_weight_factor;
    const TripletRepair q = RepairTriplet(p_ij, p_jk, p_ik, InverseVarianceWeight(p_ij),
                                          InverseVarianceWeight(p_jk), w_ik);
    if (!(q.lambda > 0.0)) continue;
    const std::size_t before = guard ? CountTouching(m, v.i, v.j, v.k, config.delta) : 0;
    m.set(v.i, v.j, q.q_ij);
    m.set(v.j, v.k, q.q_jk);
    m.set(v.i, v.k, q.q_ik);
    if (guard) {
      const std::size_t after = CountTouching(m, v.i, v.j, v.k, config.delta);
      if (running + after > violations.size() + before) {
        m.set(v.i, v.j, p_ij);
        m.set(v.j, v.k, p_jk);
        m.set(v.i, v.k, p_ik);
        ++stats.repairs_rejected;
        continue;
      }
      running = running + after - before;
    }
    ++stats.repairs_applied;
    stats.max_post_repair_excess =
        std::max(stats.max_post_repair_excess, q.q_ij + q.q_jk - 1.0 - q.q_ik);
  }
  if (stats.repairs_applied == 0) stats.max_post_repair_excess = 0.0;
  return stats;
}

}  // namespace

std::vector<TripletViolation> DetectViolations(const PairProbabilityMatrix& m, double delta) {
  const std::size_t n = m.size();
  std::vector<TripletViolation> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (auto v = CheckTriplet(m, a, b, c, delta)) out.push_back(*v);
      }
    }
  }
  auto sorted_ids = [](const TripletViolation& v) {
    std::array<std::size_t, 3> ids = {v.i, v.j, v.k};
    std::sort(ids.begin(), ids.end());
    return ids;
  };
  std::sort(out.begin(), out.end(),
            [&](const TripletViolation& x, const TripletViolation& y) {
              if (x.magnitude != y.magnitude) return x.magnitude > y.magnitude;
              return sorted_ids(x) < sorted_ids(y);
            });
  return out;
}

double InverseVarianceWeight(double p) { return 1.0 / (p * (1.0 - p)); }

TripletRepair RepairTriplet(double p_ij, double p_jk, double p_ik, double w_ij,
                            double w_jk, double w_ik) {
  if (!(w_ij > 0.0) || !(w_jk > 0.0) || !(w_ik > 0.0)) {
    throw Error(Errc::kDomainError, "repair weights must be positive");
  }
  TripletRepair out{p_ij, p_jk, p_ik, 0.0};
  const double lambda =
      (p_ij + p_jk - p_ik - 1.0) / (1.0 / w_ij + 1.0 / w_jk + 1.0 / w_ik);
  out.lambda = lambda;
  if (!(lambda > 0.0)) return out;
  out.q_ij = std::clamp(p_ij - lambda / w_ij, kMinPosterior, kMaxPosterior);
  out.q_jk = std::clamp(p_jk - lambda / w_jk, kMinPosterior, kMaxPosterior);
  out.q_ik = std::clamp(p_ik + lambda / w_ik, kMinPosterior, kMaxPosterior);
  return out;
}

std::size_t RepairReport::passes_with_repairs() const {
  return static_cast<std::size_t>(std::count_if(
      passes.begin(), passes.end(), [](const RepairPass& p) { return p.repairs_applied > 0; }));
}

RepairReport RepairBlock(PairProbabilityMatrix& m, const RepairConfig& config) {
  ValidateRepairConfig(config);
  RepairReport report;
  report.block_key = m.block_key();
  if (m.size() < 3) return report;

  std::vector<TripletViolation> violations = DetectViolations(m, config.delta);
  report.violation_counts.push_back(violations.size());
  for (int pass = 1; pass <= config.max_passes && !violations.empty(); ++pass) {
    const PairProbabilityMatrix start = m;
    RepairPass stats = Sweep(m, violations, config, pass, /*guard=*/false);
    std::vector<TripletViolation> next = DetectViolations(m, config.delta);
    if (next.size() > violations.size()) {
      m = start;
      stats = Sweep(m, violations, config, pass, /*guard=*/true);
      next = DetectViolations(m, config.delta);
    }
    report.passes.push_back(stats);
    report.violation_counts.push_back(next.size());
    violations = std::move(next);
  }
  report.residual_violations = violations.size();
  report.converged = violations.empty();
  return report;
}

}  // namespace namesake
