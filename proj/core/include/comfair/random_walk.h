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

#ifndef COMFAIR_RANDOM_WALK_H_
#define COMFAIR_RANDOM_WALK_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "comfair/graph.h"
#include "comfair/random.h"

namespace comfair {

struct WalkParams {
  int32_t walks_per_node = 10;
  int32_t walk_length = 40;
  double return_param = 1.0;  // p
  double inout_param = 1.0;   // q
  // Walks use per-walk RNG streams, so the corpus does not depend on the
  // worker count.
  int num_threads = 1;
};

struct WalkCorpus {
  std::vector<std::vector<NodeId>> walks;
  int32_t walks_per_node = 0;
  int32_t walk_length = 0;
};

// One second-order step from `current`. Unnormalized weights over the
// neighbors x of `current` are 1/p when x == previous, 1 when x is also a
// neighbor of previous, and 1/q otherwise; uniform when there is no previous
// node. NoNeighbors when `current` is isolated.
absl::StatusOr<NodeId> WalkStep(const Graph& graph,
                                std::optional<NodeId> previous,
                                NodeId current, double return_param,
                                double inout_param, Rng& rng);

// Walk r of start node s is corpus.walks[r * n + s]. Isolated start nodes
// yield single-node walks. ConfigInvalid for non-positive parameters.
absl::StatusOr<WalkCorpus> GenerateWalks(const Graph& graph,
                                         const WalkParams& params,
                                         uint64_t seed);

}  // namespace comfair

#endif  // COMFAIR_RANDOM_WALK_H_
