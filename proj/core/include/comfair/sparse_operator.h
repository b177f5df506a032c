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

#ifndef COMFAIR_SPARSE_OPERATOR_H_
#define COMFAIR_SPARSE_OPERATOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "comfair/graph.h"
#include "comfair/types.h"

namespace comfair {

// Square CSR matrix with 64-bit values. Used for the renormalized adjacency
// that drives GCN neighborhood aggregation.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(int32_t n, std::vector<int64_t> offsets,
                 std::vector<NodeId> columns, std::vector<double> values);

  int32_t size() const { return n_; }
  int64_t nnz() const { return static_cast<int64_t>(values_.size()); }

  std::span<const NodeId> RowColumns(NodeId row) const {
    return {columns_.data() + offsets_[row],
            static_cast<size_t>(offsets_[row + 1] - offsets_[row])};
  }
  std::span<const double> RowValues(NodeId row) const {
    return {values_.data() + offsets_[row],
            static_cast<size_t>(offsets_[row + 1] - offsets_[row])};
  }

  // Entry (row, col), zero when not stored.
  double At(NodeId row, NodeId col) const;

  // this * dense. With num_threads > 1 rows are split into contiguous
  // blocks; each output row is still accumulated in column order.
  Matrix Multiply(const Matrix& dense, int num_threads = 1) const;

  bool IsSymmetric(double tolerance) const;

  Matrix ToDense() const;

 private:
  int32_t n_ = 0;
  std::vector<int64_t> offsets_{0};
  std::vector<NodeId> columns_;
  std::vector<double> values_;
};

// D~^(-1/2) (A + I) D~^(-1/2), where D~ is the degree matrix of A + I.
// Entry (u, v) = 1 / sqrt((deg(u) + 1) (deg(v) + 1)) for every edge and every
// diagonal; an isolated node gets 1 on its diagonal.
SparseOperator NormalizedAdjacency(const Graph& graph);

}  // namespace comfair

#endif  // COMFAIR_SPARSE_OPERATOR_H_
