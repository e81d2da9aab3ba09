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

#include "namesake/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "namesake/error.hpp"

namespace namesake {
namespace {

std::uint64_t Choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// Reference id -> cluster index. Rejects duplicates.
std::unordered_map<std::string, std::size_t> LabelMap(const Partition& p, const char* which) {
  std::unordered_map<std::string, std::size_t> labels;
  for (std::size_t c = 0; c < p.size(); ++c) {
    for (const std::string& id : p[c]) {
      if (!labels.emplace(id, c).second) {
        throw Error(Errc::kReferenceSetMismatch,
                    std::string(which) + " partition lists '" + id + "' more than once");
      }
    }
  }
  return labels;
}

double HarmonicMean(double a, double b) { return a + b > 0.0 ? 2.0 * a * b / (a + b) : 0.0; }

}  // namespace

ContingencyTable BuildContingency(const Partition& pred, const Partition& gold) {
  const auto gold_labels = LabelMap(gold, "gold");
  const auto pred_labels = LabelMap(pred, "predicted");
  if (gold_labels.size() != pred_labels.size()) {
    throw Error(Errc::kReferenceSetMismatch,
                "predicted partition has " + std::to_string(pred_labels.size()) +
                    " references, gold has " + std::to_string(gold_labels.size()));
  }

  ContingencyTable t;
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> counts;
  t.n_i.assign(pred.size(), 0);
  t.g_j.assign(gold.size(), 0);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (const std::string& id : pred[i]) {
      const auto it = gold_labels.find(id);
      if (it == gold_labels.end()) {
        throw Error(Errc::kReferenceSetMismatch, "'" + id + "' is missing from the gold partition");
      }
      ++counts[{i, it->second}];
      ++t.n_i[i];
      ++t.g_j[it->second];
      ++t.total;
    }
  }
  t.cells.reserve(counts.size());
  for (const auto& [key, count] : counts) t.cells.push_back({key.first, key.second, count});

  // Empty clusters carry no references and are not counted as clusters.
  t.m_gen = static_cast<std::size_t>(std::count_if(t.n_i.begin(), t.n_i.end(),
                                                   [](std::uint64_t n) { return n > 0; }));
  t.m_gold = static_cast<std::size_t>(std::count_if(t.g_j.begin(), t.g_j.end(),
                                                    [](std::uint64_t n) { return n > 0; }));
  for (const ContingencyCell& c : t.cells) {
    if (c.count == t.n_i[c.generated] && c.count == t.g_j[c.gold]) ++t.m_cor;
  }
  return t;
}

PairConfusion ConfusionFromTable(const ContingencyTable& t) {
  std::uint64_t same_both = 0;
  for (const ContingencyCell& c : t.cells) same_both += Choose2(c.count);
  std::uint64_t same_pred = 0;
  for (std::uint64_t n : t.n_i) same_pred += Choose2(n);
  std::uint64_t same_gold = 0;
  for (std::uint64_t g : t.g_j) same_gold += Choose2(g);

  PairConfusion c;
  c.s = Choose2(t.total);
  c.tp = same_both;
  c.fp = same_pred - same_both;
  c.fn = same_gold - same_both;
  c.tn = c.s - c.tp - c.fp - c.fn;
  return c;
}

PairConfusion ComputePairConfusion(const Partition& pred, const Partition& gold) {
  return ConfusionFromTable(BuildContingency(pred, gold));
}

PairwiseScores ComputePairwiseScores(const PairConfusion& c) {
  if (c.s == 0) throw Error(Errc::kEmptyInput, "no reference pairs to score");
  PairwiseScores out;
  out.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(c.s);
  out.pp = c.tp + c.fp == 0 ? 1.0
                            : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  out.pr = c.tp + c.fn == 0 ? 1.0
                            : static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  out.pf1 = HarmonicMean(out.pp, out.pr);
  return out;
}

PurityScores ComputePurity(const ContingencyTable& t) {
  if (t.total == 0) throw Error(Errc::kEmptyInput, "no references to score");
  double acp = 0.0;
  double aap = 0.0;
  for (const ContingencyCell& c : t.cells) {
    const double sq = static_cast<double>(c.count) * static_cast<double>(c.count);
    acp += sq / static_cast<double>(t.n_i[c.generated]);
    aap += sq / static_cast<double>(t.g_j[c.gold]);
  }
  const double n = static_cast<double>(t.total);
  PurityScores out;
  out.acp = acp / n;
  out.aap = aap / n;
  out.k = std::sqrt(out.acp * out.aap);
  return out;
}

BCubedScores ComputeBCubed(const Partition& pred, const Partition& gold) {
  const auto gold_labels = LabelMap(gold, "gold");
  const auto pred_labels = LabelMap(pred, "predicted");
  if (gold_labels.size() != pred_labels.size()) {
    throw Error(Errc::kReferenceSetMismatch, "partitions cover different reference sets");
  }
  if (pred_labels.empty()) throw Error(Errc::kEmptyInput, "no references to score");

  BCubedScores out;
  std::vector<std::size_t> gold_of;
  std::vector<std::size_t> pred_of;
  for (std::size_t c = 0; c < pred.size(); ++c) {
    for (const std::string& id : pred[c]) {
      const auto it = gold_labels.find(id);
      if (it == gold_labels.end()) {
        throw Error(Errc::kReferenceSetMismatch, "'" + id + "' is missing from the gold partition");
      }
      out.ids.push_back(id);
      pred_of.push_back(c);
      gold_of.push_back(it->second);
    }
  }

  // Per reference: |V(s) ∩ C(s)| / |V(s)| and |V(s) ∩ C(s)| / |C(s)|.
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> overlap;
  for (std::size_t r = 0; r < out.ids.size(); ++r) ++overlap[{pred_of[r], gold_of[r]}];
  double sum_p = 0.0;
  double sum_r = 0.0;
  for (std::size_t r = 0; r < out.ids.size(); ++r) {
    const double shared = static_cast<double>(overlap[{pred_of[r], gold_of[r]}]);
    const double p = shared / static_cast<double>(pred[pred_of[r]].size());
    const double rec = shared / static_cast<double>(gold[gold_of[r]].size());
    out.per_ref_precision.push_back(p);
    out.per_ref_recall.push_back(rec);
    sum_p += p;
    sum_r += rec;
  }
  const double n = static_cast<double>(out.ids.size());
  out.precision = sum_p / n;
  out.recall = sum_r / n;
  out.f1 = HarmonicMean(out.precision, out.recall);
  return out;
}

EvaluationReport Evaluate(const Partition& pred, const Partition& gold) {
  EvaluationReport report;
  report.table = BuildContingency(pred, gold);
  if (report.table.total == 0) throw Error(Errc::kEmptyInput, "no references to score");
  report.confusion = ConfusionFromTable(report.table);
  if (report.confusion.s > 0) {
    report.pairwise = ComputePairwiseScores(report.confusion);
    report.pairwise_defined = true;
  }
  report.purity = ComputePurity(report.table);
  const BCubedScores b3 = ComputeBCubed(pred, gold);
  report.b3_precision = b3.precision;
  report.b3_recall = b3.recall;
  report.b3_f1 = b3.f1;
  return report;
}

}  // namespace namesake
