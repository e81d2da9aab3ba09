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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"

#include "cli.hpp"
#include "test_util.hpp"

namespace namesake {
namespace {

namespace fs = std::filesystem;
using testing::CodeOf;

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

class WorkspaceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("namesake_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  // Runs the command line tool in-process.
  int Run(std::vector<std::string> args) {
    args.insert(args.begin(), "namesake");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return cli::Run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  // A small synthetic corpus ingested and trained under default settings.
  void PrepareSynthetic(std::size_t citations = 300) {
    SyntheticOptions options;
    options.authors = 60;
    options.keys = 12;
    options.citations = citations;
    CmdSynth(dir_.string(), options);
    CmdIngest(Path("corpus.jsonl"), Path("corpus.json"), {});
    CmdTrain(Path("corpus.json"), Path("model.json"), {});
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

constexpr const char* kThreeRecords =
    R"({"id":"r1","title":"Alpha","authors":[{"last":"Smith","first":"J."}]})"
    "\n"
    R"({"id":"r2","title":"Beta","authors":[{"last":"Smith","first":"J."}]})"
    "\n"
    R"({"id":"r3","title":"Gamma","authors":[{"last":"Doe","first":"A."}]})"
    "\n";

TEST(RunConfigTest, JsonRoundTrip) {
  RunConfig c;
  c.alpha = 0.25;
  c.min_count = 9;
  c.delta = 0.1;
  c.stop_threshold = 0.6;
  c.max_passes = 3;
  c.low_weight_factor = 0.75;
  c.prior_p0 = 0.2;
  c.seed = 7;
  c.popularity_thresholds = {4, 40};
  c.nonmatch_size = 123;
  EXPECT_EQ(RunConfigFromJson(RunConfigToJson(c)), c);
}

TEST(RunConfigTest, PartialObjectOverridesBase) {
  RunConfig base;
  base.seed = 99;
  const RunConfig c = RunConfigFromJson(R"({"delta":0.2})", base);
  EXPECT_EQ(c.delta, 0.2);
  EXPECT_EQ(c.seed, 99u);
}

TEST(RunConfigTest, RejectsUnknownKeysAndBadValues) {
  EXPECT_EQ(CodeOf([] { RunConfigFromJson(R"({"delt":0.2})"); }), Errc::kUsage);
  EXPECT_EQ(CodeOf([] { RunConfigFromJson(R"({"delta":-1})"); }), Errc::kUsage);
  EXPECT_EQ(CodeOf([] { RunConfigFromJson(R"({"stop_threshold":1.5})"); }), Errc::kUsage);
  EXPECT_EQ(CodeOf([] { RunConfigFromJson("not json"); }), Errc::kUsage);
}

TEST(RunConfigTest, NonmatchSizeDefault) {
  RunConfig c;
  EXPECT_EQ(ResolveNonmatchSize(c, 10), 5000u);
  EXPECT_EQ(ResolveNonmatchSize(c, 2000), 10000u);
  c.nonmatch_size = 17;
  EXPECT_EQ(ResolveNonmatchSize(c, 2000), 17u);
}

TEST_F(WorkspaceTest, IngestThreeRecordFixture) {
  WriteFile(Path("in.jsonl"), kThreeRecords);
  const IngestSummary s = CmdIngest(Path("in.jsonl"), Path("corpus.json"), {});
  EXPECT_EQ(s.records, 3u);
  EXPECT_EQ(s.references, 3u);
  EXPECT_EQ(s.blocks, 2u);
  const Corpus corpus = LoadCorpus(Path("corpus.json"));
  ASSERT_EQ(corpus.blocks().size(), 2u);
  EXPECT_EQ(corpus.blocks()[0].key, "doe_a");
  EXPECT_EQ(corpus.blocks()[1].refs.size(), 2u);
}

TEST_F(WorkspaceTest, StopThresholdOneLeavesSingletons) {
  PrepareSynthetic();
  RunConfig config;
  config.stop_threshold = 1.0;
  CmdDisambiguate(Path("corpus.json"), Path("model.json"), Path("clusters.jsonl"), config);
  const Corpus corpus = LoadCorpus(Path("corpus.json"));
  const auto lines = ReadClustersJsonlFile(Path("clusters.jsonl"));
  EXPECT_EQ(lines.size(), corpus.references().size());
  for (const auto& line : lines) EXPECT_EQ(line.refs.size(), 1u);
}

TEST_F(WorkspaceTest, EvaluateGoldAgainstItself) {
  PrepareSynthetic(120);
  EvaluateOptions options;
  options.per_block = true;
  const auto report = nlohmann::json::parse(
      CmdEvaluate(Path("gold.jsonl"), Path("gold.jsonl"), Path("report.json"), options));
  for (const char* key :
       {"accuracy", "pp", "pr", "pf1", "acp", "aap", "k", "b3_precision", "b3_recall", "b3_f1"}) {
    EXPECT_EQ(report.at(key).get<double>(), 1.0) << key;
  }
  EXPECT_EQ(report.at("per_block").size(), report.at("blocks").get<std::size_t>());
  EXPECT_EQ(nlohmann::json::parse(ReadFile(Path("report.json"))), report);
}

TEST_F(WorkspaceTest, CliExitCodes) {
  WriteFile(Path("in.jsonl"), kThreeRecords);
  EXPECT_EQ(Run({"ingest", "--input", Path("in.jsonl"), "--out", Path("corpus.json")}), 0);
  EXPECT_NE(out_.str().find("2 blocks"), std::string::npos) << out_.str();

  // Usage errors.
  EXPECT_EQ(Run({}), 1);
  EXPECT_EQ(Run({"ingest", "--input", Path("in.jsonl")}), 1);
  EXPECT_EQ(Run({"frobnicate"}), 1);
  EXPECT_EQ(Run({"ingest", "--input", Path("missing.jsonl"), "--out", Path("x.json")}), 1);
  EXPECT_EQ(Run({"ingest", "--input", Path("in.jsonl"), "--out", Path("x.json"), "--delta",
                 "-3"}),
            1);
  EXPECT_FALSE(err_.str().empty());

  // Data validation errors.
  WriteFile(Path("dup.jsonl"), std::string(kThreeRecords) +
                                   R"({"id":"r1","authors":[{"last":"X"}]})" + "\n");
  EXPECT_EQ(Run({"ingest", "--input", Path("dup.jsonl"), "--out", Path("x.json")}), 2);
  EXPECT_NE(err_.str().find("r1"), std::string::npos);

  // Model incompatibility.
  WriteFile(Path("bad_model.json"), R"({"format_version":99})");
  EXPECT_EQ(Run({"disambiguate", "--corpus", Path("corpus.json"), "--model",
                 Path("bad_model.json"), "--out", Path("c.jsonl")}),
            3);
  WriteFile(Path("bad_model.json"), "{\"format_version\":1,");
  EXPECT_EQ(Run({"disambiguate", "--corpus", Path("corpus.json"), "--model",
                 Path("bad_model.json"), "--out", Path("c.jsonl")}),
            3);
}

TEST_F(WorkspaceTest, CliEndToEnd) {
  ASSERT_EQ(Run({"synth", "--out-dir", dir_.string(), "--authors", "40", "--keys", "10",
                 "--citations", "200"}),
            0);
  ASSERT_EQ(Run({"ingest", "--input", Path("corpus.jsonl"), "--out", Path("corpus.json")}), 0);
  ASSERT_EQ(Run({"train", "--corpus", Path("corpus.json"), "--model-out", Path("model.json")}),
            0);
  ASSERT_EQ(Run({"disambiguate", "--corpus", Path("corpus.json"), "--model", Path("model.json"),
                 "--out", Path("clusters.jsonl"), "--emit-merges", "--threads", "2"}),
            0);
  EXPECT_TRUE(fs::exists(Path("clusters.jsonl.summary.json")));
  EXPECT_TRUE(fs::exists(Path("clusters.jsonl.merges.jsonl")));
  ASSERT_EQ(Run({"evaluate", "--pred", Path("clusters.jsonl"), "--gold", Path("gold.jsonl"),
                 "--average", "macro", "--per-block"}),
            0);
  const auto report = nlohmann::json::parse(out_.str());
  EXPECT_EQ(report.at("averaging"), "macro");
  EXPECT_GT(report.at("k").get<double>(), 0.5);

  const Corpus corpus = LoadCorpus(Path("corpus.json"));
  const Block& block = corpus.blocks().front();
  ASSERT_GE(block.refs.size(), 2u);
  const std::string a = corpus.references()[block.refs[0]].ref_id.ToString();
  const std::string b = corpus.references()[block.refs[1]].ref_id.ToString();
  ASSERT_EQ(Run({"inspect", "pair", "--corpus", Path("corpus.json"), "--model",
                 Path("model.json"), a, b}),
            0);
  const auto diag = nlohmann::json::parse(out_.str());
  EXPECT_EQ(diag.at("block"), block.key);
  EXPECT_EQ(diag.at("levels").size(), kProfileDims);
  const double r = diag.at("r").get<double>();
  const double p = diag.at("prior").get<double>();
  EXPECT_NEAR(diag.at("posterior").get<double>(), r * p / (r * p + 1 - p), 1e-9);

  const Block& other = corpus.blocks().back();
  const std::string c = corpus.references()[other.refs[0]].ref_id.ToString();
  EXPECT_EQ(Run({"inspect", "pair", "--corpus", Path("corpus.json"), "--model",
                 Path("model.json"), a, c}),
            2);
}

TEST_F(WorkspaceTest, OutputsAreIndependentOfThreadCount) {
  PrepareSynthetic();
  RunConfig one;
  one.thread_count = 1;
  RunConfig four;
  four.thread_count = 4;
  DisambiguateOptions options;
  options.emit_merges = true;
  CmdDisambiguate(Path("corpus.json"), Path("model.json"), Path("a.jsonl"), one, options);
  CmdDisambiguate(Path("corpus.json"), Path("model.json"), Path("b.jsonl"), four, options);
  EXPECT_EQ(ReadFile(Path("a.jsonl")), ReadFile(Path("b.jsonl")));
  EXPECT_EQ(ReadFile(Path("a.jsonl.summary.json")), ReadFile(Path("b.jsonl.summary.json")));
  EXPECT_EQ(ReadFile(Path("a.jsonl.merges.jsonl")), ReadFile(Path("b.jsonl.merges.jsonl")));

  // Training is also thread-independent.
  CmdTrain(Path("corpus.json"), Path("model4.json"), four);
  EXPECT_EQ(ReadFile(Path("model.json")), ReadFile(Path("model4.json")));
}

TEST_F(WorkspaceTest, RunCanBeReplayedFromItsSummary) {
  PrepareSynthetic();
  RunConfig config;
  config.stop_threshold = 0.7;
  config.delta = 0.08;
  CmdDisambiguate(Path("corpus.json"), Path("model.json"), Path("a.jsonl"), config);
  const RunConfig replay = LoadRunConfig(Path("a.jsonl.summary.json"));
  EXPECT_EQ(replay.stop_threshold, 0.7);
  EXPECT_EQ(replay.delta, 0.08);
  CmdDisambiguate(Path("corpus.json"), Path("model.json"), Path("b.jsonl"), replay);
  EXPECT_EQ(ReadFile(Path("a.jsonl")), ReadFile(Path("b.jsonl")));
}

TEST_F(WorkspaceTest, ClusterLinesRoundTrip) {
  const std::vector<ClusterLine> lines = {{"smith_j", 0, {"a#0", "b#1"}}, {"smith_j", 1, {"c#0"}}};
  std::ostringstream out;
  WriteClusterLines(out, lines);
  std::istringstream in(out.str());
  const auto back = ReadClustersJsonl(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].refs, lines[0].refs);
  EXPECT_EQ(ToPartition(back), (Partition{{"a#0", "b#1"}, {"c#0"}}));
}

}  // namespace
}  // namespace namesake
