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

#include "comfair/random_walk.h"

#include <algorithm>
#include <thread>
#include <vector>

#include "absl/strings/str_cat.h"
#include "comfair/status.h"

namespace comfair {

absl::StatusOr<NodeId> WalkStep(const Graph& graph,
                                std::optional<NodeId> previous,
                                NodeId current, double return_param,
                                double inout_param, Rng& rng) {
  const auto neighbors = graph.Neighbors(current);
  if (neighbors.empty()) {
    return PreconditionError("NoNeighbors",
                             absl::StrCat("node ", current, " is isolated"));
  }
  if (neighbors.size() == 1) return neighbors[0];
  if (!previous.has_value()) {
    std::uniform_int_distribution<size_t> pick(0, neighbors.size() - 1);
    return neighbors[pick(rng)];
  }

  // Small per-step buffer; walks never share it across threads.
  thread_local std::vector<double> cumulative;
  cumulative.resize(neighbors.size());
  const auto prev_neighbors = graph.Neighbors(*previous);
  double total = 0.0;
  for (size_t i = 0; i < neighbors.size(); ++i) {
    const NodeId x = neighbors[i];
    double weight;
    if (x == *previous) {
      weight = 1.0 / return_param;
    } else if (std::binary_search(prev_neighbors.begin(), prev_neighbors.end(),
                                  x)) {
      weight = 1.0;
    } else {
      weight = 1.0 / inout_param;
    }
    total += weight;
    cumulative[i] = total;
  }
  const double target = UniformUnit(rng) * total;
  const auto it =
      std::upper_bound(cumulative.begin(), cumulative.end(), target);
  const size_t index =
      std::min<size_t>(it - cumulative.begin(), neighbors.size() - 1);
  return neighbors[index];
}

absl::StatusOr<WalkCorpus> GenerateWalks(const Graph& graph,
                                         const WalkParams& params,
                                         uint64_t seed) {
  if (params.walks_per_node < 1 || params.walk_length < 1) {
    return ConfigError("ConfigInvalid",
                       "walks_per_node and walk_length must be >= 1");
  }
  if (!(params.return_param > 0) || !(params.inout_param > 0)) {
    return ConfigError("ConfigInvalid", "p and q must be > 0");
  }
  const int32_t n = graph.num_nodes();
  WalkCorpus corpus;
  corpus.walks_per_node = params.walks_per_node;
  corpus.walk_length = params.walk_length;
  const int64_t total = int64_t{params.walks_per_node} * n;
  corpus.walks.resize(total);

  auto run = [&](int64_t begin, int64_t end) {
    for (int64_t w = begin; w < end; ++w) {
      Rng rng = MakeRng(seed, static_cast<uint64_t>(w));
      std::vector<NodeId>& walk = corpus.walks[w];
      walk.reserve(params.walk_length);
      walk.push_back(static_cast<NodeId>(w % n));
      std::optional<NodeId> previous;
      while (static_cast<int32_t>(walk.size()) < params.walk_length) {
        auto next = WalkStep(graph, previous, walk.back(), params.return_param,
                             params.inout_param, rng);
        if (!next.ok()) break;  // isolated: truncate
        previous = walk.back();
        walk.push_back(*next);
      }
    }
  };

  const int threads = std::max(1, params.num_threads);
  if (threads == 1 || total < threads) {
    run(0, total);
  } else {
    std::vector<std::thread> workers;
    const int64_t block = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int64_t begin = t * block;
      const int64_t end = std::min(total, begin + block);
      if (begin >= end) break;
      workers.emplace_back(run, begin, end);
    }
    for (auto& worker : workers) worker.join();
  }
  return corpus;
}

}  // namespace comfair
