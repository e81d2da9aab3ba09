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

#include "cli.hpp"

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "namesake/error.hpp"
#include "namesake/pipeline.hpp"

namespace namesake::cli {
namespace {

// Flags shared by the commands that consume a RunConfig. Each is applied on
// top of --config only when given on the command line.
struct ConfigFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<std::uint64_t> min_count;
  std::optional<double> delta;
  std::optional<double> stop;
  std::optional<int> max_passes;
  std::optional<double> low_weight_factor;
  std::optional<double> prior_p0;
  std::optional<unsigned> threads;
  std::optional<std::size_t> nonmatch_size;
  std::vector<std::size_t> popularity;

  void AddTo(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file (or a run summary to replay)");
    cmd->add_option("--seed", seed, "Seed for non-match sampling");
    cmd->add_option("--alpha", alpha, "Additive smoothing constant");
    cmd->add_option("--min-count", min_count, "Minimum cell count before backing off");
    cmd->add_option("--delta", delta, "Transitivity violation slack");
    cmd->add_option("--stop", stop, "Clustering stop threshold");
    cmd->add_option("--max-passes", max_passes, "Maximum repair passes per block");
    cmd->add_option("--low-weight-factor", low_weight_factor,
                    "Weight multiplier for the low edge from pass 2");
    cmd->add_option("--prior-p0", prior_p0, "Starting value of the prior iteration");
    cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");
    cmd->add_option("--nonmatch-size", nonmatch_size, "Non-match sample size (0 = auto)");
    cmd->add_option("--popularity", popularity, "Popularity thresholds t1 t2")->expected(2);
  }

  RunConfig Resolve() const {
    RunConfig c;
    if (!config_path.empty()) c = LoadRunConfig(config_path);
    if (seed) c.seed = *seed;
    if (alpha) c.alpha = *alpha;
    if (min_count) c.min_count = *min_count;
    if (delta) c.delta = *delta;
    if (stop) c.stop_threshold = *stop;
    if (max_passes) c.max_passes = *max_passes;
    if (low_weight_factor) c.low_weight_factor = *low_weight_factor;
    if (prior_p0) c.prior_p0 = *prior_p0;
    if (threads) c.thread_count = *threads;
    if (nonmatch_size) c.nonmatch_size = *nonmatch_size;
    if (popularity.size() == 2) c.popularity_thresholds = {popularity[0], popularity[1]};
    ValidateRunConfig(c);
    return c;
  }
};

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Author name disambiguation for bibliographic corpora", "namesake"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Validate and block a JSON Lines corpus");
  std::string ingest_input;
  std::string ingest_out;
  ConfigFlags ingest_flags;
  ingest->add_option("--input", ingest_input, "Citation JSON Lines file")->required();
  ingest->add_option("--out", ingest_out, "Corpus store to write")->required();
  ingest_flags.AddTo(ingest);

  // train
  auto* train = app.add_subcommand("train", "Fit the likelihood-ratio model");
  std::string train_corpus;
  std::string train_model;
  ConfigFlags train_flags;
  train->add_option("--corpus", train_corpus, "Corpus store from 'ingest'")->required();
  train->add_option("--model-out", train_model, "Model file to write")->required();
  train_flags.AddTo(train);

  // disambiguate
  auto* dis = app.add_subcommand("disambiguate", "Score, repair and cluster every block");
  std::string dis_corpus;
  std::string dis_model;
  std::string dis_out;
  DisambiguateOptions dis_options;
  ConfigFlags dis_flags;
  dis->add_option("--corpus", dis_corpus, "Corpus store from 'ingest'")->required();
  dis->add_option("--model", dis_model, "Model file from 'train'")->required();
  dis->add_option("--out", dis_out, "Cluster JSON Lines output")->required();
  dis->add_option("--summary", dis_options.summary_path,
                  "Run summary output (default: <out>.summary.json)");
  dis->add_flag("--emit-merges", dis_options.emit_merges, "Also write <out>.merges.jsonl");
  dis_flags.AddTo(dis);

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Score predicted clusters against gold");
  std::string eval_pred;
  std::string eval_gold;
  std::string eval_out;
  std::string eval_average = "micro";
  EvaluateOptions eval_options;
  eval->add_option("--pred", eval_pred, "Predicted cluster JSON Lines")->required();
  eval->add_option("--gold", eval_gold, "Gold cluster JSON Lines")->required();
  eval->add_option("--out", eval_out, "Report file (default: standard output only)");
  eval->add_flag("--per-block", eval_options.per_block, "Include per-block breakdowns");
  eval->add_option("--average", eval_average, "micro or macro")
      ->check(CLI::IsMember({"micro", "macro"}));

  // inspect pair
  auto* inspect = app.add_subcommand("inspect", "Diagnostics");
  inspect->require_subcommand(1);
  auto* pair = inspect->add_subcommand("pair", "Explain the score of one reference pair");
  std::string pair_corpus;
  std::string pair_model;
  std::string pair_a;
  std::string pair_b;
  ConfigFlags pair_flags;
  pair->add_option("--corpus", pair_corpus, "Corpus store")->required();
  pair->add_option("--model", pair_model, "Model file")->required();
  pair->add_option("ref_a", pair_a, "First reference, <citation>#<position>")->required();
  pair->add_option("ref_b", pair_b, "Second reference")->required();
  pair_flags.AddTo(pair);

  // synth
  auto* synth = app.add_subcommand("synth", "Write a synthetic corpus with gold clusters");
  std::string synth_dir;
  SyntheticOptions synth_options;
  synth->add_option("--out-dir", synth_dir, "Output directory")->required();
  synth->add_option("--seed", synth_options.seed, "Generator seed");
  synth->add_option("--authors", synth_options.authors, "Number of authors");
  synth->add_option("--keys", synth_options.keys, "Number of LN-FI keys");
  synth->add_option("--citations", synth_options.citations, "Number of citations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ingest->parsed()) {
      const IngestSummary s = CmdIngest(ingest_input, ingest_out, ingest_flags.Resolve());
      out << "ingested " << s.records << " records, " << s.references << " references, "
          << s.blocks << " blocks\n";
    } else if (train->parsed()) {
      const TrainResult r = CmdTrain(train_corpus, train_model, train_flags.Resolve());
      out << "trained on " << r.match_pairs << " match and " << r.nonmatch_pairs
          << " non-match pairs; checksum " << ModelChecksum(r.model) << "\n";
    } else if (dis->parsed()) {
      const DisambiguationResult r =
          CmdDisambiguate(dis_corpus, dis_model, dis_out, dis_flags.Resolve(), dis_options);
      std::size_t clusters = 0;
      for (const BlockOutcome& b : r.blocks) clusters += b.clustering.clusters.size();
      out << "wrote " << clusters << " clusters over " << r.blocks.size() << " blocks\n";
    } else if (eval->parsed()) {
      eval_options.averaging = eval_average == "macro" ? Averaging::kMacro : Averaging::kMicro;
      out << CmdEvaluate(eval_pred, eval_gold, eval_out, eval_options);
    } else if (pair->parsed()) {
      out << CmdInspectPair(pair_corpus, pair_model, pair_a, pair_b, pair_flags.Resolve());
    } else if (synth->parsed()) {
      CmdSynth(synth_dir, synth_options);
      out << "wrote " << synth_dir << "/corpus.jsonl and " << synth_dir << "/gold.jsonl\n";
    }
  } catch (const Error& e) {
    err << "namesake: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "namesake: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace namesake::cli
