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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "namesake/clustering.hpp"
#include "namesake/corpus.hpp"
#include "namesake/inference.hpp"
#include "namesake/metrics.hpp"
#include "namesake/synthetic.hpp"
#include "namesake/training.hpp"
#include "namesake/transitivity.hpp"

namespace namesake {

// Every tunable of a run. Defaults equal the defaults of the owning modules.
struct RunConfig {
  double alpha = 0.5;
  std::uint64_t min_count = 5;
  double delta = 0.05;
  double stop_threshold = 0.5;
  int max_passes = 10;
  double low_weight_factor = 0.5;
  double prior_p0 = 0.1;
  std::uint64_t seed = 42;
  PopularityThresholds popularity_thresholds;
  unsigned thread_count = 0;  // 0 = hardware concurrency
  // Non-match sample size; 0 = max(5 |M|, 5000).
  std::size_t nonmatch_size = 0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws Error(kUsage) naming the offending field.
void ValidateRunConfig(const RunConfig& config);

// JSON object of every field except thread_count, which never changes
// results and is kept out of artifacts so they compare equal across machines.
std::string RunConfigToJson(const RunConfig& config);

// Overlays the keys present in `text` onto `base`. Accepts either a bare
// config object or any document with a top-level "config" object (such as a
// run summary). Unknown keys are rejected.
RunConfig RunConfigFromJson(const std::string& text, RunConfig base = {});
RunConfig LoadRunConfig(const std::string& path, RunConfig base = {});

std::size_t ResolveNonmatchSize(const RunConfig& config, std::size_t match_pairs);

// --- train -------------------------------------------------------------------

struct TrainResult {
  RatioModel model;
  std::size_t match_pairs = 0;
  std::size_t nonmatch_pairs = 0;
};

TrainResult TrainModel(const Corpus& corpus, const RunConfig& config);

// --- disambiguate ------------------------------------------------------------

struct BlockOutcome {
  BlockPrior prior;
  RepairReport repair;
  Clustering clustering;
};

struct DisambiguationResult {
  std::vector<BlockOutcome> blocks;  // one per corpus block, in block order
};

DisambiguationResult Disambiguate(const Corpus& corpus, const RatioModel& model,
                                  const RunConfig& config);

// Cluster lines: {"block":..., "cluster_id":..., "refs":[...]}.
void WriteClustersJsonl(std::ostream& out, const Corpus& corpus,
                        const DisambiguationResult& result);
// Merge lines: {"block":..., "step":..., "a":[...], "b":[...], "prob":...}.
void WriteMergesJsonl(std::ostream& out, const Corpus& corpus,
                      const DisambiguationResult& result);
std::string RunSummaryJson(const Corpus& corpus, const RatioModel& model,
                           const RunConfig& config, const DisambiguationResult& result);

// Flattened partition of the disambiguation output, by reference id.
Partition ResultPartition(const Corpus& corpus, const DisambiguationResult& result);

// --- cluster files -----------------------------------------------------------

struct ClusterLine {
  std::string block;
  std::size_t cluster_id = 0;
  std::vector<std::string> refs;
};

std::vector<ClusterLine> ReadClustersJsonl(std::istream& in);
std::vector<ClusterLine> ReadClustersJsonlFile(const std::string& path);
void WriteClusterLines(std::ostream& out, const std::vector<ClusterLine>& lines);
Partition ToPartition(const std::vector<ClusterLine>& lines);

// --- evaluate ----------------------------------------------------------------

enum class Averaging { kMicro, kMacro };

struct EvaluateOptions {
  bool per_block = false;
  Averaging averaging = Averaging::kMicro;
};

// JSON report: every EvaluationReport field, optional per-block breakdown.
std::string EvaluationJson(const std::vector<ClusterLine>& pred,
                           const std::vector<ClusterLine>& gold,
                           const EvaluateOptions& options = {});

// --- commands ----------------------------------------------------------------

struct IngestSummary {
  std::size_t records = 0;
  std::size_t references = 0;
  std::size_t blocks = 0;
};

IngestSummary CmdIngest(const std::string& input_path, const std::string& out_path,
                        const RunConfig& config);

TrainResult CmdTrain(const std::string& corpus_path, const std::string& model_out,
                     const RunConfig& config);

struct DisambiguateOptions {
  std::string summary_path;  // empty: <out>.summary.json
  bool emit_merges = false;  // writes <out>.merges.jsonl
};

DisambiguationResult CmdDisambiguate(const std::string& corpus_path,
                                     const std::string& model_path,
                                     const std::string& out_path, const RunConfig& config,
                                     const DisambiguateOptions& options = {});

std::string CmdEvaluate(const std::string& pred_path, const std::string& gold_path,
                        const std::string& report_out, const EvaluateOptions& options = {});

// JSON diagnostic for one reference pair: profile, r, prior, posterior.
std::string CmdInspectPair(const std::string& corpus_path, const std::string& model_path,
                           const std::string& ref_a, const std::string& ref_b,
                           const RunConfig& config);

// Writes <dir>/corpus.jsonl and <dir>/gold.jsonl.
void CmdSynth(const std::string& out_dir, const SyntheticOptions& options);

}  // namespace namesake
