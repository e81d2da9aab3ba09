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

#include <random>
#include <sstream>

#include <benchmark/benchmark.h>

#include "namesake/clustering.hpp"
#include "namesake/corpus.hpp"
#include "namesake/metrics.hpp"
#include "namesake/profile.hpp"
#include "namesake/synthetic.hpp"
#include "namesake/training.hpp"
#include "namesake/transitivity.hpp"

namespace namesake {
namespace {

const Corpus& SyntheticCorpus() {
  static const Corpus corpus = [] {
    std::istringstream in(GenerateSyntheticCorpus({}).jsonl);
    return Corpus(ReadCitationsJsonl(in), {});
  }();
  return corpus;
}

PairProbabilityMatrix RandomMatrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.001, 0.999);
  std::vector<double> upper(PairProbabilityMatrix::PairCount(n));
  for (double& v : upper) v = unit(rng);
  return MatrixFromUpperTriangle(n, upper);
}

void BM_FeatureTable(benchmark::State& state) {
  const Corpus& corpus = SyntheticCorpus();
  for (auto _ : state) benchmark::DoNotOptimize(FeatureTable(corpus));
  state.SetItemsProcessed(state.iterations() * corpus.references().size());
}
BENCHMARK(BM_FeatureTable);

void BM_ComputeProfile(benchmark::State& state) {
  const Corpus& corpus = SyntheticCorpus();
  const FeatureTable features(corpus);
  const Block& block = corpus.blocks().front();
  std::size_t pairs = 0;
  for (auto _ : state) {
    for (std::size_t i = 0; i < block.refs.size(); ++i) {
      for (std::size_t j = i + 1; j < block.refs.size(); ++j) {
        benchmark::DoNotOptimize(ComputeProfile(corpus, features, block.refs[i], block.refs[j]));
        ++pairs;
      }
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(pairs));
}
BENCHMARK(BM_ComputeProfile);

void BM_RepairBlock(benchmark::State& state) {
  const auto input = RandomMatrix(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    auto m = input;
    benchmark::DoNotOptimize(RepairBlock(m));
  }
}
BENCHMARK(BM_RepairBlock)->Arg(10)->Arg(40)->Arg(100);

void BM_Agglomerate(benchmark::State& state) {
  const auto m = RandomMatrix(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(Agglomerate(m, 0.5));
}
BENCHMARK(BM_Agglomerate)->Arg(10)->Arg(100)->Arg(400);

void BM_Evaluate(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  Partition pred(n / 4 + 1), gold(n / 5 + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = "r" + std::to_string(i);
    pred[rng() % pred.size()].push_back(id);
    gold[rng() % gold.size()].push_back(id);
  }
  std::erase_if(pred, [](const auto& c) { return c.empty(); });
  std::erase_if(gold, [](const auto& c) { return c.empty(); });
  for (auto _ : state) benchmark::DoNotOptimize(Evaluate(pred, gold));
}
BENCHMARK(BM_Evaluate)->Arg(1000)->Arg(10000);

}  // namespace
}  // namespace namesake

BENCHMARK_MAIN();
