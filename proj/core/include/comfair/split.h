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

#ifndef COMFAIR_SPLIT_H_
#define COMFAIR_SPLIT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "comfair/graph.h"

namespace comfair {

struct SplitFractions {
  double train = 0.5;
  double val = 0.25;
  double test = 0.25;
};

// Disjoint, non-empty train/validation/test node sets, each sorted ascending.
struct NodeSplit {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;
};

// Deterministic for a fixed seed. Split sizes are round(n * train),
// round(n * val) and the remainder. In stratified mode the same rule is
// applied per class, so every class keeps its proportion within one node per
// split. Errors: FractionSumInvalid, ClassTooSmall, SplitEmpty.
absl::StatusOr<NodeSplit> SplitNodes(const Graph& graph,
                                     const SplitFractions& fractions,
                                     uint64_t seed, bool stratify_by_label);

// Checks disjointness, range and non-emptiness.
absl::Status ValidateSplit(const NodeSplit& split, int32_t num_nodes);

// CSV "node_id,part" with part in {train, val, test}.
std::string SplitToCsv(const NodeSplit& split);
absl::StatusOr<NodeSplit> SplitFromCsv(const std::string& csv,
                                       int32_t num_nodes);

}  // namespace comfair

#endif  // COMFAIR_SPLIT_H_
