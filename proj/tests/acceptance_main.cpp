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

// Acceptance gate: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Tolerances and time budgets are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"
#include "namesake/clustering.hpp"
#include "namesake/inference.hpp"
#include "namesake/metrics.hpp"
#include "namesake/pipeline.hpp"
#include "namesake/synthetic.hpp"
#include "namesake/transitivity.hpp"
#include "oracles.hpp"

namespace namesake {
namespace {

namespace fs = std::filesystem;

constexpr double kBayesTolerance = 1e-12;
constexpr double kBayesBudgetSeconds = 1.0;
constexpr double kRepairOracleTolerance = 1e-3;
constexpr double kRepairExampleTolerance = 5e-6;  // five decimals
constexpr double kRepairBudgetSeconds = 30.0;
constexpr double kIdentityTolerance = 1e-12;
constexpr double kTraceTolerance = 5e-5;  // 0.7534 to four decimals
constexpr double kMinSyntheticK = 0.90;
constexpr double kMinSyntheticPf1 = 0.90;
constexpr double kSyntheticBudgetSeconds = 60.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure message; later failures are counted only.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_ == 0) first_ = what;
    ++failures_;
  }
  Outcome Finish(std::string detail) const {
    if (failures_ == 0) return {true, std::move(detail)};
    return {false, std::to_string(failures_) + " failure(s); first: " + first_};
  }

 private:
  std::size_t failures_ = 0;
  std::string first_;
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

Outcome BayesCorrectness() {
  const auto start = std::chrono::steady_clock::now();
  Checker check;
  std::vector<double> rs, ps;
  for (int i = 0; i < 50; ++i) {
    // Every grid point's exact posterior lies well inside the clamp range,
    // so the comparison is against the unclamped closed form.
    rs.push_back(std::pow(10.0, -3.0 + 6.0 * i / 49.0));
    ps.push_back(0.01 + 0.98 * i / 49.0);
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < rs.size(); ++a) {
    for (std::size_t b = 0; b < ps.size(); ++b) {
      const double r = rs[a], p = ps[b];
      const double got = Posterior(r, p);
      const double err = std::abs(got - r * p / (r * p + 1.0 - p));
      worst = std::max(worst, err);
      check.Expect(err <= kBayesTolerance, Fmt("closed form at r=%g p=%g", r, p));
      if (a > 0) check.Expect(got > Posterior(rs[a - 1], p), Fmt("monotone in r at %g", r));
      if (b > 0) check.Expect(got > Posterior(r, ps[b - 1]), Fmt("monotone in p at %g", p));
    }
  }
  const double elapsed = Seconds(start);
  check.Expect(elapsed < kBayesBudgetSeconds, Fmt("took %.3f s", elapsed));
  return check.Finish(Fmt("2500 grid points, max error %.2e, %.3f s", worst, elapsed));
}

Outcome RepairOracle() {
  const auto start = std::chrono::steady_clock::now();
  Checker check;
  const double w9 = InverseVarianceWeight(0.9), w5 = InverseVarianceWeight(0.5);
  const TripletRepair ex = RepairTriplet(0.9, 0.9, 0.5, w9, w9, w5);
  check.Expect(std::abs(ex.q_ij - 0.83721) <= kRepairExampleTolerance &&
                   std::abs(ex.q_jk - 0.83721) <= kRepairExampleTolerance &&
                   std::abs(ex.q_ik - 0.67442) <= kRepairExampleTolerance,
               Fmt("worked example gave (%.6f, %.6f, %.6f)", ex.q_ij, ex.q_jk, ex.q_ik));

  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> high(0.55, 0.99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int made = 0; made < 100;) {
    const double p_ij = high(rng), p_jk = high(rng);
    const double slack = p_ij + p_jk - 1.0;
    if (slack <= 0.02) continue;
    const double p_ik = std::max(0.01, slack * unit(rng) - 0.01);
    if (!(p_ij + p_jk - 1.0 > p_ik)) continue;
    ++made;
    const double w_ij = InverseVarianceWeight(p_ij), w_jk = InverseVarianceWeight(p_jk),
                 w_ik = InverseVarianceWeight(p_ik);
    const TripletRepair q = RepairTriplet(p_ij, p_jk, p_ik, w_ij, w_jk, w_ik);
    const auto g = oracle::GridMinimizeRepair(p_ij, p_jk, p_ik, w_ij, w_jk, w_ik);
    const double err = std::max({std::abs(q.q_ij - g[0]), std::abs(q.q_jk - g[1]),
                                 std::abs(q.q_ik - g[2])});
    worst = std::max(worst, err);
    check.Expect(err <= kRepairOracleTolerance,
                 Fmt("triplet (%.4f, %.4f, %.4f) differs from grid", p_ij, p_jk, p_ik));
  }
  const double elapsed = Seconds(start);
  check.Expect(elapsed < kRepairBudgetSeconds, Fmt("took %.1f s", elapsed));
  return check.Finish(Fmt("100 triplets, max deviation %.2e, %.2f s", worst, elapsed));
}

Outcome TransitivityElimination() {
  Checker check;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const RepairConfig config;
  std::size_t repaired_blocks = 0, repairs = 0;
  for (int run = 0; run < 1000; ++run) {
    std::vector<double> upper(10);
    for (double& v : upper) v = std::clamp(unit(rng), kMinPosterior, kMaxPosterior);
    auto m = MatrixFromUpperTriangle(5, upper);
    const RepairReport report = RepairBlock(m, config);
    repaired_blocks += report.passes_with_repairs() > 0 ? 1 : 0;
    for (const RepairPass& pass : report.passes) {
      repairs += pass.repairs_applied;
      check.Expect(pass.max_post_repair_excess <= config.delta + 1e-12,
                   "run " + std::to_string(run) + ": repaired triplet exceeds delta");
    }
    for (std::size_t i = 1; i < report.violation_counts.size(); ++i) {
      check.Expect(report.violation_counts[i] <= report.violation_counts[i - 1],
                   "run " + std::to_string(run) + ": violation count rose from " +
                       std::to_string(report.violation_counts[i - 1]) + " to " +
                       std::to_string(report.violation_counts[i]));
    }
  }
  return check.Finish("1000 matrices, " + std::to_string(repaired_blocks) + " needed repair, " +
                      std::to_string(repairs) + " triplet repairs");
}

Outcome MetricIdentities() {
  Checker check;
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 30;
    const Partition pred = oracle::RandomPartition(n, 1 + rng() % n, rng);
    const Partition gold = oracle::RandomPartition(n, 1 + rng() % n, rng);
    const EvaluationReport r = Evaluate(pred, gold);
    const std::string at = "trial " + std::to_string(trial);
    check.Expect(std::abs(r.b3_precision - r.purity.acp) <= kIdentityTolerance,
                 at + ": B3 precision != ACP");
    check.Expect(std::abs(r.b3_recall - r.purity.aap) <= kIdentityTolerance,
                 at + ": B3 recall != AAP");
    check.Expect(r.confusion.s == n * (n - 1) / 2, at + ": S != C(N,2)");
    check.Expect(r.confusion == oracle::EnumeratePairs(pred, gold),
                 at + ": confusion differs from enumeration");
  }
  const Partition gold = {{"a", "b", "c"}, {"d", "e"}};
  const Partition pred = {{"a", "b"}, {"c", "d", "e"}};
  const EvaluationReport f = Evaluate(pred, gold);
  auto near = [](double x, double y) { return std::abs(x - y) <= kIdentityTolerance; };
  check.Expect(near(f.pairwise.accuracy, 0.6) && near(f.pairwise.pp, 0.5) &&
                   near(f.pairwise.pr, 0.5) && near(f.pairwise.pf1, 0.5),
               "fixture pairwise scores");
  check.Expect(near(f.purity.acp, 11.0 / 15.0) && near(f.purity.aap, 11.0 / 15.0) &&
                   near(f.purity.k, 11.0 / 15.0),
               "fixture purity scores");
  return check.Finish("500 random partition pairs and the hand-worked fixture");
}

Outcome ClusteringTraces() {
  Checker check;
  using Clusters = std::vector<std::vector<std::size_t>>;
  const auto a = MatrixFromUpperTriangle(3, {0.9, 0.8, 0.7});
  const Clustering ca = Agglomerate(a, 0.5);
  check.Expect(ca.clusters == Clusters{{0, 1, 2}}, "trace (0.9,0.8,0.7) final clusters");
  check.Expect(ca.merges.size() == 2 && std::abs(ca.merges[0].prob - 0.9) < 1e-12 &&
                   std::abs(ca.merges[1].prob - 0.7534) < kTraceTolerance,
               "trace (0.9,0.8,0.7) merge probabilities");
  const auto b = MatrixFromUpperTriangle(3, {0.9, 0.1, 0.1});
  const Clustering cb = Agglomerate(b, 0.5);
  check.Expect(cb.clusters == Clusters{{0, 1}, {2}}, "trace (0.9,0.1,0.1) final clusters");
  check.Expect(cb.merges.size() == 1, "trace (0.9,0.1,0.1) merge count");

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 15;
    std::vector<double> upper(PairProbabilityMatrix::PairCount(n));
    for (double& v : upper) v = unit(rng);
    const auto m = MatrixFromUpperTriangle(n, upper);
    check.Expect(Agglomerate(m, 0.0).clusters.size() == 1, "threshold 0.0 gives one cluster");
    check.Expect(Agglomerate(m, 1.0).clusters.size() == n, "threshold 1.0 gives singletons");
  }
  return check.Finish(Fmt("second merge linkage %.4f", ca.merges.size() > 1 ? ca.merges[1].prob : 0.0));
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Workdir {
  Workdir() : path(fs::temp_directory_path() / "namesake_acceptance") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~Workdir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
  fs::path path;
};

Outcome SyntheticBenchmark(const Workdir& dir) {
  Checker check;
  const auto start = std::chrono::steady_clock::now();
  const SyntheticOptions options;  // 200 authors, 40 keys, 1000 citations
  CmdSynth(dir.path.string(), options);
  const RunConfig config;
  CmdIngest(dir / "corpus.jsonl", dir / "corpus.json", config);
  CmdTrain(dir / "corpus.json", dir / "model.json", config);
  CmdDisambiguate(dir / "corpus.json", dir / "model.json", dir / "clusters.jsonl", config);
  const auto report =
      nlohmann::json::parse(CmdEvaluate(dir / "clusters.jsonl", dir / "gold.jsonl", ""));
  const double elapsed = Seconds(start);
  const double k = report.at("k").get<double>();
  const double pf1 = report.at("pf1").get<double>();
  check.Expect(k >= kMinSyntheticK, Fmt("K = %.4f", k));
  check.Expect(pf1 >= kMinSyntheticPf1, Fmt("PF1 = %.4f", pf1));
  check.Expect(elapsed < kSyntheticBudgetSeconds, Fmt("took %.1f s", elapsed));
  return check.Finish(Fmt("K = %.4f, PF1 = %.4f, %.2f s", k, pf1, elapsed));
}

Outcome Determinism(const Workdir& dir) {
  Checker check;
  RunConfig one;
  one.thread_count = 1;
  RunConfig many = one;
  many.thread_count = 4;
  CmdTrain(dir / "corpus.json", dir / "model1.json", one);
  CmdTrain(dir / "corpus.json", dir / "model4.json", many);
  check.Expect(Slurp(dir / "model1.json") == Slurp(dir / "model4.json"),
               "model files differ between thread counts");
  CmdDisambiguate(dir / "corpus.json", dir / "model1.json", dir / "t1.jsonl", one);
  CmdDisambiguate(dir / "corpus.json", dir / "model4.json", dir / "t4.jsonl", many);
  const std::string a = Slurp(dir / "t1.jsonl");
  check.Expect(!a.empty() && a == Slurp(dir / "t4.jsonl"),
               "cluster files differ between 1 and 4 threads");
  check.Expect(Slurp(dir / "t1.jsonl.summary.json") == Slurp(dir / "t4.jsonl.summary.json"),
               "run summaries differ between 1 and 4 threads");
  return check.Finish("1 vs 4 threads: " + std::to_string(a.size()) + " identical bytes");
}

}  // namespace
}  // namespace namesake

int main() {
  using namesake::Outcome;
  const namesake::Workdir dir;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"bayes-correctness", namesake::BayesCorrectness},
      {"repair-oracle", namesake::RepairOracle},
      {"transitivity-elimination", namesake::TransitivityElimination},
      {"metric-identities", namesake::MetricIdentities},
      {"clustering-traces", namesake::ClusteringTraces},
      {"synthetic-benchmark", [&] { return namesake::SyntheticBenchmark(dir); }},
      {"determinism", [&] { return namesake::Determinism(dir); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
    failed += outcome.pass ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
