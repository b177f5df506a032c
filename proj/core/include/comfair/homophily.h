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

#ifndef COMFAIR_HOMOPHILY_H_
#define COMFAIR_HOMOPHILY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "comfair/graph.h"

namespace comfair {

// Nodes at or above this ratio are annotated "high" in reports.
inline constexpr double kHighHomophilyThreshold = 0.5;

// Per-node edge homophily: the fraction of a node's incident edges whose
// other endpoint carries the same label. Isolated nodes have no ratio.
struct HomophilyProfile {
  std::vector<std::optional<double>> ratio;
  std::vector<int32_t> degree;
  std::vector<int32_t> same_label;  // numerator of ratio
};

std::optional<double> NodeHomophily(const Graph& graph, NodeId node);

HomophilyProfile ComputeHomophilyProfile(const Graph& graph);

// CSV with header "node_id,degree,ratio"; undefined ratios are written NA.
std::string HomophilyProfileToCsv(const HomophilyProfile& profile);
absl::StatusOr<HomophilyProfile> HomophilyProfileFromCsv(
    const std::string& csv, int32_t num_nodes);

}  // namespace comfair

#endif  // COMFAIR_HOMOPHILY_H_
