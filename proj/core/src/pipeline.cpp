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

#include "namesake/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "namesake/error.hpp"
#include "namesake/parallel.hpp"
#include "namesake/text.hpp"

namespace namesake {
namespace {

using json = nlohmann::json;

[[noreturn]] void Usage(const std::string& what) { throw Error(Errc::kUsage, what); }

json ConfigJson(const RunConfig& c) {
  return {
      {"alpha", c.alpha},
      {"min_count", c.min_count},
      {"delta", c.delta},
      {"stop_threshold", c.stop_threshold},
      {"max_passes", c.max_passes},
      {"low_weight_factor", c.low_weight_factor},
      {"prior_p0", c.prior_p0},
      {"seed", c.seed},
      {"popularity_thresholds", {c.popularity_thresholds.t1, c.popularity_thresholds.t2}},
      {"nonmatch_size", c.nonmatch_size},
  };
}

template <typename T>
T Field(const json& value, const std::string& key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    Usage("config field '" + key + "' has the wrong type");
  }
}

std::uint64_t UnsignedField(const json& value, const std::string& key) {
  if (!value.is_number_unsigned()) Usage("config field '" + key + "' must be a non-negative integer");
  return value.get<std::uint64_t>();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot open '" + path + "' for writing");
  out << bytes;
  if (!out) throw Error(Errc::kIo, "failed writing '" + path + "'");
}

json RepairJson(const RepairReport& r) {
  json passes = json::array();
  for (const RepairPass& p : r.passes) {
    passes.push_back({{"violations_found", p.violations_found},
                      {"repairs_applied", p.repairs_applied},
                      {"guarded", p.guarded},
                      {"repairs_rejected", p.repairs_rejected},
                      {"max_post_repair_excess", p.max_post_repair_excess}});
  }
  return {{"passes", std::move(passes)},
          {"violation_counts", r.violation_counts},
          {"residual_violations", r.residual_violations},
          {"converged", r.converged}};
}

std::vector<std::string> BlockRefIds(const Corpus& corpus, const Block& block,
                                     const std::vector<std::size_t>& local) {
  std::vector<std::string> ids;
  ids.reserve(local.size());
  for (std::size_t i : local) ids.push_back(corpus.references()[block.refs[i]].ref_id.ToString());
  return ids;
}

json ScoresJson(const EvaluationReport& r) {
  json out = {
      {"n", r.table.total},
      {"tp", r.confusion.tp},
      {"tn", r.confusion.tn},
      {"fp", r.confusion.fp},
      {"fn", r.confusion.fn},
      {"s", r.confusion.s},
      {"m_gold", r.table.m_gold},
      {"m_gen", r.table.m_gen},
      {"m_cor", r.table.m_cor},
      {"acp", r.purity.acp},
      {"aap", r.purity.aap},
      {"k", r.purity.k},
      {"b3_precision", r.b3_precision},
      {"b3_recall", r.b3_recall},
      {"b3_f1", r.b3_f1},
  };
  if (r.pairwise_defined) {
    out["accuracy"] = r.pairwise.accuracy;
    out["pp"] = r.pairwise.pp;
    out["pr"] = r.pairwise.pr;
    out["pf1"] = r.pairwise.pf1;
  } else {
    out["accuracy"] = nullptr;
    out["pp"] = nullptr;
    out["pr"] = nullptr;
    out["pf1"] = nullptr;
  }
  return out;
}

}  // namespace

// --- config --------------------------------------------------------------------

void ValidateRunConfig(const RunConfig& c) {
  if (!(c.alpha > 0.0)) Usage("alpha must be positive");
  if (c.min_count < 1) Usage("min_count must be at least 1");
  if (!(c.delta > 0.0)) Usage("delta must be positive");
  if (!(c.stop_threshold >= 0.0 && c.stop_threshold <= 1.0)) {
    Usage("stop_threshold must lie in [0, 1]");
  }
  if (c.max_passes < 0) Usage("max_passes must be non-negative");
  if (!(c.low_weight_factor > 0.0 && c.low_weight_factor <= 1.0)) {
    Usage("low_weight_factor must lie in (0, 1]");
  }
  if (!(c.prior_p0 > 0.0 && c.prior_p0 < 1.0)) Usage("prior_p0 must lie in (0, 1)");
  if (c.popularity_thresholds.t1 > c.popularity_thresholds.t2) {
    Usage("popularity_thresholds must satisfy t1 <= t2");
  }
}

std::string RunConfigToJson(const RunConfig& config) { return ConfigJson(config).dump(); }

RunConfig RunConfigFromJson(const std::string& text, RunConfig base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Usage(std::string("config is not valid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("config") && doc["config"].is_object()) {
    doc = doc["config"];
  }
  if (!doc.is_object()) Usage("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key == "alpha") {
      base.alpha = Field<double>(value, key);
    } else if (key == "min_count") {
      base.min_count = UnsignedField(value, key);
    } else if (key == "delta") {
      base.delta = Field<double>(value, key);
    } else if (key == "stop_threshold") {
      base.stop_threshold = Field<double>(value, key);
    } else if (key == "max_passes") {
      base.max_passes = Field<int>(value, key);
    } else if (key == "low_weight_factor") {
      base.low_weight_factor = Field<double>(value, key);
    } else if (key == "prior_p0") {
      base.prior_p0 = Field<double>(value, key);
    } else if (key == "seed") {
      base.seed = UnsignedField(value, key);
    } else if (key == "thread_count") {
      base.thread_count = static_cast<unsigned>(UnsignedField(value, key));
    } else if (key == "nonmatch_size") {
      base.nonmatch_size = UnsignedField(value, key);
    } else if (key == "popularity_thresholds") {
      if (!value.is_array() || value.size() != 2) {
        Usage("popularity_thresholds must be a two-element array");
      }
      base.popularity_thresholds.t1 = UnsignedField(value[0], key);
      base.popularity_thresholds.t2 = UnsignedField(value[1], key);
    } else {
      Usage("unknown config field '" + key + "'");
    }
  }
  ValidateRunConfig(base);
  return base;
}

RunConfig LoadRunConfig(const std::string& path, RunConfig base) {
  return RunConfigFromJson(ReadFile(path), base);
}

std::size_t ResolveNonmatchSize(const RunConfig& config, std::size_t match_pairs) {
  if (config.nonmatch_size != 0) return config.nonmatch_size;
  return std::max<std::size_t>(5 * match_pairs, 5000);
}

// --- train -------------------------------------------------------------------

TrainResult TrainModel(const Corpus& corpus, const RunConfig& config) {
  ValidateRunConfig(config);
  const FeatureTable features(corpus);
  ReferencePairSets sets;
  sets.match_pairs = GenerateMatchSet(corpus, features, config.thread_count);
  if (sets.match_pairs.empty()) {
    throw Error(Errc::kEmptyTrainingSet,
                "no match pairs: the corpus has no shared emails and no rare-block "
                "full-name agreements");
  }
  sets.nonmatch_pairs = GenerateNonmatchSet(
      corpus, config.seed, ResolveNonmatchSize(config, sets.match_pairs.size()));

  FitOptions fit;
  fit.alpha = config.alpha;
  fit.min_count = config.min_count;
  fit.threads = config.thread_count;
  TrainResult out;
  out.model = FitRatioModel(corpus, features, sets, fit);
  out.model.config_json = RunConfigToJson(config);
  out.match_pairs = sets.match_pairs.size();
  out.nonmatch_pairs = sets.nonmatch_pairs.size();
  return out;
}

// --- disambiguate ------------------------------------------------------------

DisambiguationResult Disambiguate(const Corpus& corpus, const RatioModel& model,
                                  const RunConfig& config) {
  ValidateRunConfig(config);
  model.Validate();
  const FeatureTable features(corpus);
  RepairConfig repair;
  repair.delta = config.delta;
  repair.max_passes = config.max_passes;
  repair.low_weight_factor = config.low_weight_factor;
  PriorOptions prior_options;
  prior_options.p0 = config.prior_p0;

  DisambiguationResult result;
  result.blocks.resize(corpus.blocks().size());
  ParallelFor(corpus.blocks().size(), config.thread_count, [&](std::size_t bi) {
    const Block& block = corpus.blocks()[bi];
    BlockOutcome& outcome = result.blocks[bi];
    const std::vector<double> r = BlockRatios(block, corpus, features, model);
    outcome.prior = EstimatePrior(block.key, r, prior_options);
    PairProbabilityMatrix m = MatrixFromRatios(block, corpus, r, outcome.prior.prior);
    outcome.repair = RepairBlock(m, repair);
    outcome.clustering = Agglomerate(m, config.stop_threshold);
  });
  return result;
}

void WriteClustersJsonl(std::ostream& out, const Corpus& corpus,
                        const DisambiguationResult& result) {
  for (std::size_t bi = 0; bi < result.blocks.size(); ++bi) {
    const Block& block = corpus.blocks()[bi];
    const auto& clusters = result.blocks[bi].clustering.clusters;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      const json line = {{"block", block.key},
                         {"cluster_id", c},
                         {"refs", BlockRefIds(corpus, block, clusters[c])}};
      out << line.dump() << '\n';
    }
  }
}

void WriteMergesJsonl(std::ostream& out, const Corpus& corpus,
                      const DisambiguationResult& result) {
  for (std::size_t bi = 0; bi < result.blocks.size(); ++bi) {
    const Block& block = corpus.blocks()[bi];
    const auto& merges = result.blocks[bi].clustering.merges;
    for (std::size_t s = 0; s < merges.size(); ++s) {
      const json line = {{"block", block.key},
                         {"step", s},
                         {"a", BlockRefIds(corpus, block, merges[s].a)},
                         {"b", BlockRefIds(corpus, block, merges[s].b)},
                         {"prob", merges[s].prob}};
      out << line.dump() << '\n';
    }
  }
}

std::string RunSummaryJson(const Corpus& corpus, const RatioModel& model,
                           const RunConfig& config, const DisambiguationResult& result) {
  json blocks = json::array();
  std::size_t clusters = 0;
  std::size_t repairs = 0;
  std::size_t residual = 0;
  for (std::size_t bi = 0; bi < result.blocks.size(); ++bi) {
    const BlockOutcome& o = result.blocks[bi];
    clusters += o.clustering.clusters.size();
    residual += o.repair.residual_violations;
    for (const RepairPass& p : o.repair.passes) repairs += p.repairs_applied;
    blocks.push_back({{"key", corpus.blocks()[bi].key},
                      {"refs", corpus.blocks()[bi].refs.size()},
                      {"popularity_bin", corpus.blocks()[bi].popularity_bin},
                      {"prior", o.prior.prior},
                      {"prior_iterations", o.prior.iterations_used},
                      {"repair", RepairJson(o.repair)},
                      {"clusters", o.clustering.clusters.size()},
                      {"merges", o.clustering.merges.size()}});
  }
  const json summary = {
      {"config", ConfigJson(config)},
      {"model_checksum", ModelChecksum(model)},
      {"corpus",
       {{"records", corpus.records().size()},
        {"references", corpus.references().size()},
        {"blocks", corpus.blocks().size()}}},
      {"totals",
       {{"clusters", clusters},
        {"repairs_applied", repairs},
        {"residual_violations", residual}}},
      {"blocks", std::move(blocks)},
  };
  return summary.dump(2) + "\n";
}

Partition ResultPartition(const Corpus& corpus, const DisambiguationResult& result) {
  Partition p;
  for (std::size_t bi = 0; bi < result.blocks.size(); ++bi) {
    for (const auto& cluster : result.blocks[bi].clustering.clusters) {
      p.push_back(BlockRefIds(corpus, corpus.blocks()[bi], cluster));
    }
  }
  return p;
}

// --- cluster files -----------------------------------------------------------

std::vector<ClusterLine> ReadClustersJsonl(std::istream& in) {
  std::vector<ClusterLine> lines;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (text::Trim(raw).empty()) continue;
    auto fail = [&](const std::string& what) {
      throw Error(Errc::kInvalidInput, "cluster line " + std::to_string(line_no) + ": " + what);
    };
    json obj;
    try {
      obj = json::parse(raw);
    } catch (const json::parse_error& e) {
      fail(std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) fail("expected an object");
    ClusterLine line;
    const auto block = obj.find("block");
    if (block == obj.end() || !block->is_string()) fail("'block' must be a string");
    line.block = block->get<std::string>();
    const auto id = obj.find("cluster_id");
    if (id == obj.end() || !id->is_number_unsigned()) {
      fail("'cluster_id' must be a non-negative integer");
    }
    line.cluster_id = id->get<std::size_t>();
    const auto refs = obj.find("refs");
    if (refs == obj.end() || !refs->is_array()) fail("'refs' must be an array");
    for (const json& r : *refs) {
      if (!r.is_string()) fail("refs must be strings");
      line.refs.push_back(r.get<std::string>());
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<ClusterLine> ReadClustersJsonlFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot open '" + path + "' for reading");
  return ReadClustersJsonl(in);
}

void WriteClusterLines(std::ostream& out, const std::vector<ClusterLine>& lines) {
  for (const ClusterLine& l : lines) {
    out << json{{"block", l.block}, {"cluster_id", l.cluster_id}, {"refs", l.refs}}.dump()
        << '\n';
  }
}

Partition ToPartition(const std::vector<ClusterLine>& lines) {
  // Lines sharing (block, cluster_id) describe the same cluster.
  std::map<std::pair<std::string, std::size_t>, std::vector<std::string>> grouped;
  for (const ClusterLine& l : lines) {
    auto& refs = grouped[{l.block, l.cluster_id}];
    refs.insert(refs.end(), l.refs.begin(), l.refs.end());
  }
  Partition p;
  p.reserve(grouped.size());
  for (auto& [key, refs] : grouped) p.push_back(std::move(refs));
  return p;
}

// --- evaluate ----------------------------------------------------------------

std::string EvaluationJson(const std::vector<ClusterLine>& pred,
                           const std::vector<ClusterLine>& gold,
                           const EvaluateOptions& options) {
  const Partition pred_p = ToPartition(pred);
  const Partition gold_p = ToPartition(gold);
  const EvaluationReport overall = Evaluate(pred_p, gold_p);

  // Blocks follow the predicted file; gold clusters are restricted to them.
  std::map<std::string, std::vector<ClusterLine>> pred_by_block;
  for (const ClusterLine& l : pred) pred_by_block[l.block].push_back(l);
  std::unordered_map<std::string, std::string> block_of_ref;
  for (const ClusterLine& l : pred) {
    for (const std::string& r : l.refs) block_of_ref[r] = l.block;
  }
  std::map<std::string, Partition> gold_by_block;
  for (const Partition::value_type& cluster : gold_p) {
    std::map<std::string, std::vector<std::string>> split;
    for (const std::string& r : cluster) split[block_of_ref.at(r)].push_back(r);
    for (auto& [block, refs] : split) gold_by_block[block].push_back(std::move(refs));
  }

  json per_block = json::object();
  std::map<std::string, double> macro_sum;
  std::size_t macro_blocks = 0;
  std::size_t macro_pair_blocks = 0;
  for (const auto& [block, lines] : pred_by_block) {
    const EvaluationReport r = Evaluate(ToPartition(lines), gold_by_block[block]);
    const json scores = ScoresJson(r);
    if (options.per_block) per_block[block] = scores;
    ++macro_blocks;
    for (const char* key : {"acp", "aap", "k", "b3_precision", "b3_recall", "b3_f1"}) {
      macro_sum[key] += scores[key].get<double>();
    }
    if (r.pairwise_defined) {
      ++macro_pair_blocks;
      for (const char* key : {"accuracy", "pp", "pr", "pf1"}) {
        macro_sum[key] += scores[key].get<double>();
      }
    }
  }

  json report = ScoresJson(overall);
  report["averaging"] = options.averaging == Averaging::kMicro ? "micro" : "macro";
  report["blocks"] = pred_by_block.size();
  if (options.averaging == Averaging::kMacro && macro_blocks > 0) {
    for (const char* key : {"acp", "aap", "k", "b3_precision", "b3_recall", "b3_f1"}) {
      report[key] = macro_sum[key] / static_cast<double>(macro_blocks);
    }
    for (const char* key : {"accuracy", "pp", "pr", "pf1"}) {
      report[key] = macro_pair_blocks == 0
                        ? json(nullptr)
                        : json(macro_sum[key] / static_cast<double>(macro_pair_blocks));
    }
  }
  if (options.per_block) report["per_block"] = std::move(per_block);
  return report.dump(2) + "\n";
}

// --- commands ----------------------------------------------------------------

IngestSummary CmdIngest(const std::string& input_path, const std::string& out_path,
                        const RunConfig& config) {
  ValidateRunConfig(config);
  Corpus corpus(ReadCitationsJsonlFile(input_path), config.popularity_thresholds);
  SaveCorpus(corpus, out_path);
  return {corpus.records().size(), corpus.references().size(), corpus.blocks().size()};
}

TrainResult CmdTrain(const std::string& corpus_path, const std::string& model_out,
                     const RunConfig& config) {
  const Corpus corpus = LoadCorpus(corpus_path);
  TrainResult result = TrainModel(corpus, config);
  SaveModel(result.model, model_out);
  return result;
}

DisambiguationResult CmdDisambiguate(const std::string& corpus_path,
                                     const std::string& model_path,
                                     const std::string& out_path, const RunConfig& config,
                                     const DisambiguateOptions& options) {
  const Corpus corpus = LoadCorpus(corpus_path);
  const RatioModel model = LoadModel(model_path);
  DisambiguationResult result = Disambiguate(corpus, model, config);

  std::ostringstream clusters;
  WriteClustersJsonl(clusters, corpus, result);
  WriteFile(out_path, clusters.str());
  WriteFile(options.summary_path.empty() ? out_path + ".summary.json" : options.summary_path,
            RunSummaryJson(corpus, model, config, result));
  if (options.emit_merges) {
    std::ostringstream merges;
    WriteMergesJsonl(merges, corpus, result);
    WriteFile(out_path + ".merges.jsonl", merges.str());
  }
  return result;
}

std::string CmdEvaluate(const std::string& pred_path, const std::string& gold_path,
                        const std::string& report_out, const EvaluateOptions& options) {
  const std::string report =
      EvaluationJson(ReadClustersJsonlFile(pred_path), ReadClustersJsonlFile(gold_path), options);
  if (!report_out.empty()) WriteFile(report_out, report);
  return report;
}

std::string CmdInspectPair(const std::string& corpus_path, const std::string& model_path,
                           const std::string& ref_a, const std::string& ref_b,
                           const RunConfig& config) {
  ValidateRunConfig(config);
  const Corpus corpus = LoadCorpus(corpus_path);
  const RatioModel model = LoadModel(model_path);
  auto find = [&](const std::string& s) {
    const auto index = corpus.find_reference(RefId::Parse(s));
    if (!index) throw Error(Errc::kInvalidInput, "reference '" + s + "' is not in the corpus");
    return *index;
  };
  const std::size_t a = find(ref_a);
  const std::size_t b = find(ref_b);
  const FeatureTable features(corpus);
  const SimilarityProfile x = ComputeProfile(corpus, features, a, b);
  const RatioLookup lookup = LookupRatio(model, x);
  const Block& block = corpus.blocks()[corpus.block_of(a)];
  PriorOptions prior_options;
  prior_options.p0 = config.prior_p0;
  const BlockPrior prior = EstimatePrior(block, corpus, features, model, prior_options);

  json profile = json::object();
  const ProfileSchema& schema = ProfileSchema::V1();
  for (std::size_t d = 0; d < kProfileDims; ++d) {
    profile[std::string(schema.dimensions[d].name)] = x.levels[d];
  }
  const json out = {
      {"block", block.key},
      {"ref_a", corpus.references()[a].ref_id.ToString()},
      {"ref_b", corpus.references()[b].ref_id.ToString()},
      {"schema_version", x.schema_version},
      {"levels", x.levels},
      {"profile", std::move(profile)},
      {"profile_index", ProfileIndex(x, schema)},
      {"r", lookup.r},
      {"lookup", lookup.backoff ? "backoff" : "full"},
      {"prior", prior.prior},
      {"prior_iterations", prior.iterations_used},
      {"posterior", Posterior(lookup.r, prior.prior)},
  };
  return out.dump(2) + "\n";
}

void CmdSynth(const std::string& out_dir, const SyntheticOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(Errc::kIo, "cannot create '" + out_dir + "': " + ec.message());
  const SyntheticCorpus synth = GenerateSyntheticCorpus(options);
  WriteFile(out_dir + "/corpus.jsonl", synth.jsonl);
  std::vector<ClusterLine> gold;
  for (const GoldCluster& g : synth.gold) gold.push_back({g.block, g.cluster_id, g.refs});
  std::ostringstream out;
  WriteClusterLines(out, gold);
  WriteFile(out_dir + "/gold.jsonl", out.str());
}

}  // namespace namesake
