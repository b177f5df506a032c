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

#include "comfair/graph.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "comfair/status.h"

namespace comfair {

absl::StatusOr<Graph> Graph::Create(int32_t num_nodes,
                                    std::span<const Edge> edges,
                                    Matrix features,
                                    std::vector<int32_t> labels,
                                    std::vector<uint8_t> sensitive,
                                    int32_t num_classes) {
  if (num_nodes < 1) {
    return ConfigError("DimensionMismatch", "graph needs at least one node");
  }
  if (features.rows() != num_nodes) {
    return DataError("DimensionMismatch",
                     absl::StrCat("feature rows ", features.rows(),
                                  " != node count ", num_nodes));
  }
  if (static_cast<int64_t>(labels.size()) != num_nodes) {
    return DataError("DimensionMismatch",
                     absl::StrCat("label count ", labels.size(),
                                  " != node count ", num_nodes));
  }
  if (static_cast<int64_t>(sensitive.size()) != num_nodes) {
    return DataError("DimensionMismatch",
                     absl::StrCat("sensitive count ", sensitive.size(),
                                  " != node count ", num_nodes));
  }
  if (!features.allFinite()) {
    return DataError("NonFiniteFeature", "features contain NaN or Inf");
  }
  for (NodeId i = 0; i < num_nodes; ++i) {
    if (sensitive[i] > 1) {
      return DataError("NonBinarySensitive",
                       absl::StrCat("node ", i, " has sensitive value ",
                                    static_cast<int>(sensitive[i])));
    }
  }
  int32_t max_label = 0;
  for (NodeId i = 0; i < num_nodes; ++i) {
    if (labels[i] < 0) {
      return DataError("LabelOutOfRange",
                       absl::StrCat("node ", i, " has label ", labels[i]));
    }
    max_label = std::max(max_label, labels[i]);
  }
  if (num_classes <= 0) num_classes = std::max(2, max_label + 1);
  if (max_label >= num_classes) {
    return DataError("LabelOutOfRange",
                     absl::StrCat("label ", max_label, " >= num_classes ",
                                  num_classes));
  }

  std::vector<std::pair<NodeId, NodeId>> directed;
  directed.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= num_nodes || e.v < 0 || e.v >= num_nodes) {
      return MakeError(absl::StatusCode::kOutOfRange, "NodeIdOutOfRange",
                       absl::StrCat("edge (", e.u, ", ", e.v,
                                    ") outside [0, ", num_nodes, ")"));
    }
    if (e.u == e.v) {
      return DataError("SelfLoop", absl::StrCat("self-loop on node ", e.u));
    }
    directed.emplace_back(e.u, e.v);
    directed.emplace_back(e.v, e.u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()),
                 directed.end());

  Graph g;
  g.num_nodes_ = num_nodes;
  g.num_classes_ = num_classes;
  g.offsets_.assign(num_nodes + 1, 0);
  g.neighbors_.reserve(directed.size());
  for (const auto& [u, v] : directed) {
    ++g.offsets_[u + 1];
    g.neighbors_.push_back(v);
  }
  for (NodeId i = 0; i < num_nodes; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.features_ = std::move(features);
  g.labels_ = std::move(labels);
  g.sensitive_ = std::move(sensitive);
  return g;
}

bool Graph::HasEdge(NodeId u, NodeId v) const {
  auto row = Neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::EdgeList() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes_; ++u) {
    for (NodeId v : Neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

}  // namespace comfair
