// Copyright 2026 The ComFair Authors
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

#include <cstdlib>
#include <iostream>
#include <numeric>
#include <vector>

#include "benchmark/benchmark.h"
#include "comfair/coreset.h"
#include "comfair/gcn.h"
#include "comfair/homophily.h"
#include "comfair/kmeans.h"
#include "comfair/random.h"
#include "comfair/random_walk.h"
#include "comfair/sbm.h"
#include "comfair/sparse_operator.h"

namespace comfair {
namespace {

Graph BenchGraph(int32_t nodes_per_block) {
  SbmConfig config;
  config.block_sizes = {nodes_per_block, nodes_per_block};
  config.p_in = 20.0 / nodes_per_block;
  config.p_out = 2.0 / nodes_per_block;
  config.sens_alignment = 0.9;
  config.label_homophily = {0.85, 0.35};
  auto graph = GenerateSbm(config, 1);
  if (!graph.ok()) {
    std::cerr << graph.status() << "\n";
    std::abort();
  }
  return *std::move(graph);
}

void BM_SpMM(benchmark::State& state) {
  const Graph graph = BenchGraph(static_cast<int32_t>(state.range(0)));
  const SparseOperator a = NormalizedAdjacency(graph);
  const Matrix dense = Matrix::Random(graph.num_nodes(), 64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.Multiply(dense));
  }
  state.SetItemsProcessed(state.iterations() * graph.num_edges());
}
BENCHMARK(BM_SpMM)->Arg(500)->Arg(2000)->Arg(8000);

void BM_Forward(benchmark::State& state) {
  const Graph graph = BenchGraph(static_cast<int32_t>(state.range(0)));
  const SparseOperator a = NormalizedAdjacency(graph);
  const ModelParams params =
      ModelParams::Glorot(graph.features().cols(), 64, 64, 2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Forward(params, a, graph.features()));
  }
}
BENCHMARK(BM_Forward)->Arg(500)->Arg(2000);

void BM_ForwardBackward(benchmark::State& state) {
  const Graph graph = BenchGraph(static_cast<int32_t>(state.range(0)));
  const SparseOperator a = NormalizedAdjacency(graph);
  const ModelParams params =
      ModelParams::Glorot(graph.features().cols(), 64, 64, 2, 1);
  std::vector<int32_t> mask(graph.num_nodes());
  std::iota(mask.begin(), mask.end(), 0);
  std::vector<int32_t> coreset(mask.begin(), mask.begin() + 30);
  LossInputs inputs;
  inputs.labels = &graph.labels();
  inputs.mask = mask;
  inputs.coreset = coreset;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Gradients(params, a, graph.features(), inputs));
  }
}
BENCHMARK(BM_ForwardBackward)->Arg(500)->Arg(2000);

void BM_RandomWalks(benchmark::State& state) {
  const Graph graph = BenchGraph(static_cast<int32_t>(state.range(0)));
  WalkParams params;
  params.walks_per_node = 2;
  params.return_param = 0.5;
  params.inout_param = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(GenerateWalks(graph, params, 1));
  }
  state.SetItemsProcessed(state.iterations() * graph.num_nodes() *
                          params.walks_per_node * params.walk_length);
}
BENCHMARK(BM_RandomWalks)->Arg(500)->Arg(2000);

void BM_KMeans(benchmark::State& state) {
  const Matrix points = Matrix::Random(state.range(0), 64);
  KMeansParams params;
  params.num_clusters = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(KMeans(points, params, 1));
  }
}
BENCHMARK(BM_KMeans)->Arg(1000)->Arg(10000);

void BM_Coreset(benchmark::State& state) {
  const Graph graph = BenchGraph(static_cast<int32_t>(state.range(0)));
  const HomophilyProfile profile = ComputeHomophilyProfile(graph);
  std::vector<int32_t> communities(graph.num_nodes());
  for (int32_t i = 0; i < graph.num_nodes(); ++i) communities[i] = i % 5;
  NodeSplit split;
  for (NodeId i = 0; i < graph.num_nodes(); i += 2) split.train.push_back(i);
  CoresetOptions options;
  options.total_budget = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        SelectCoreset(graph, communities, profile, split, options));
  }
}
BENCHMARK(BM_Coreset)->Arg(2000);

}  // namespace
}  // namespace comfair

BENCHMARK_MAIN();
