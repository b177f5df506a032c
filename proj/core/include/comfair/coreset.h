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

#ifndef COMFAIR_CORESET_H_
#define COMFAIR_CORESET_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "comfair/graph.h"
#include "comfair/homophily.h"
#include "comfair/split.h"

namespace comfair {

enum class CoresetStrategy {
  // Highest- and lowest-homophily training nodes of each cell.
  kExtremal,
  // Uniform sample of each cell (ablation baseline).
  kRandom,
};

absl::StatusOr<CoresetStrategy> ParseCoresetStrategy(const std::string& name);
std::string CoresetStrategyName(CoresetStrategy strategy);

struct CoresetEntry {
  NodeId node;
  int32_t community;
  uint8_t sensitive;
  double homophily;
  double weight = 1.0;
};

// Budget bookkeeping for one (community, sensitive group) cell.
struct CoresetCell {
  int32_t community;
  uint8_t sensitive;
  int32_t requested;  // floor(n_k / 2)
  int32_t pool_size;  // training nodes with a defined ratio
  int32_t selected;
  int32_t shortfall;  // requested - selected
};

struct Coreset {
  std::vector<CoresetEntry> entries;
  int32_t total_budget = 0;
  CoresetStrategy strategy = CoresetStrategy::kExtremal;
  std::vector<int32_t> community_budget;  // n_k per community
  std::vector<CoresetCell> cells;         // 2 per community, S0 then S1
  std::vector<std::string> warnings;

  std::vector<NodeId> Nodes() const;
};

struct CoresetOptions {
  int32_t total_budget = 30;
  CoresetStrategy strategy = CoresetStrategy::kExtremal;
  // When set, every community gets this budget instead of the proportional
  // share of total_budget.
  std::optional<int32_t> per_community_budget;
  // Only used by kRandom.
  uint64_t seed = 0;
};

// floor(total_budget * community_size / total_nodes).
int32_t CommunityBudget(int64_t community_size, int64_t total_nodes,
                        int32_t total_budget);

// Per community k with budget n_k, each sensitive group g contributes up to
// b = floor(n_k / 2) training nodes of k with group g and a defined
// homophily ratio. kExtremal takes ceil(b/2) highest and floor(b/2) lowest
// ratios, ties broken by ascending node id. Cells with fewer candidates than
// b are recorded as shortfalls. Errors: EmptyTrainingSplit, DimensionMismatch.
absl::StatusOr<Coreset> SelectCoreset(const Graph& graph,
                                      const std::vector<int32_t>& communities,
                                      const HomophilyProfile& profile,
                                      const NodeSplit& split,
                                      const CoresetOptions& options);

// CSV "node_id,community,sensitive,ratio,weight".
std::string CoresetToCsv(const Coreset& coreset);
absl::StatusOr<std::vector<CoresetEntry>> CoresetEntriesFromCsv(
    const std::string& csv, int32_t num_nodes);

}  // namespace comfair

#endif  // COMFAIR_CORESET_H_
