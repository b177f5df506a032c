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

#ifndef COMFAIR_GRAPH_H_
#define COMFAIR_GRAPH_H_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "comfair/types.h"

namespace comfair {

struct Edge {
  NodeId u;
  NodeId v;
};

// Immutable undirected attributed graph.
//
// Adjacency is stored as CSR over both edge directions: row offsets of size
// n + 1 and, per row, strictly increasing neighbor ids. Self-loops are never
// stored; the GCN operator adds them itself (see NormalizedAdjacency).
class Graph {
 public:
  Graph() = default;

  // Builds a validated graph. Duplicate and reversed edges collapse into one
  // undirected edge. Errors:
  //   SelfLoop, NodeIdOutOfRange, DimensionMismatch, NonBinarySensitive,
  //   LabelOutOfRange.
  // `num_classes` <= 0 means "max label + 1, at least 2".
  static absl::StatusOr<Graph> Create(int32_t num_nodes,
                                      std::span<const Edge> edges,
                                      Matrix features,
                                      std::vector<int32_t> labels,
                                      std::vector<uint8_t> sensitive,
                                      int32_t num_classes = 0);

  int32_t num_nodes() const { return num_nodes_; }
  // Number of undirected edges.
  int64_t num_edges() const {
    return static_cast<int64_t>(neighbors_.size()) / 2;
  }
  int32_t num_classes() const { return num_classes_; }
  int32_t feature_dim() const { return static_cast<int32_t>(features_.cols()); }

  std::span<const NodeId> Neighbors(NodeId u) const {
    return {neighbors_.data() + offsets_[u],
            static_cast<size_t>(offsets_[u + 1] - offsets_[u])};
  }
  int32_t Degree(NodeId u) const {
    return static_cast<int32_t>(offsets_[u + 1] - offsets_[u]);
  }
  bool HasEdge(NodeId u, NodeId v) const;

  const std::vector<int64_t>& offsets() const { return offsets_; }
  const std::vector<NodeId>& neighbors() const { return neighbors_; }
  const Matrix& features() const { return features_; }
  const std::vector<int32_t>& labels() const { return labels_; }
  const std::vector<uint8_t>& sensitive() const { return sensitive_; }

  // Undirected edges as (u, v) with u < v, in CSR order.
  std::vector<Edge> EdgeList() const;

 private:
  int32_t num_nodes_ = 0;
  int32_t num_classes_ = 0;
  std::vector<int64_t> offsets_{0};
  std::vector<NodeId> neighbors_;
  Matrix features_;
  std::vector<int32_t> labels_;
  std::vector<uint8_t> sensitive_;
};

}  // namespace comfair

#endif  // COMFAIR_GRAPH_H_
