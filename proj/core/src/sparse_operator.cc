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

#include "comfair/sparse_operator.h"

#include <algorithm>
#include <cmath>
#include <thread>
#include <utility>

namespace comfair {

SparseOperator::SparseOperator(int32_t n, std::vector<int64_t> offsets,
                               std::vector<NodeId> columns,
                               std::vector<double> values)
    : n_(n),
      offsets_(std::move(offsets)),
      columns_(std::move(columns)),
      values_(std::move(values)) {}

double SparseOperator::At(NodeId row, NodeId col) const {
  auto cols = RowColumns(row);
  auto it = std::lower_bound(cols.begin(), cols.end(), col);
  if (it == cols.end() || *it != col) return 0.0;
  return values_[offsets_[row] + (it - cols.begin())];
}

Matrix SparseOperator::Multiply(const Matrix& dense, int num_threads) const {
  Matrix out = Matrix::Zero(n_, dense.cols());
  auto rows = [&](NodeId begin, NodeId end) {
    for (NodeId i = begin; i < end; ++i) {
      for (int64_t p = offsets_[i]; p < offsets_[i + 1]; ++p) {
        out.row(i).noalias() += values_[p] * dense.row(columns_[p]);
      }
    }
  };
  if (num_threads <= 1 || n_ < 2 * num_threads) {
    rows(0, n_);
    return out;
  }
  std::vector<std::thread> workers;
  const NodeId block = (n_ + num_threads - 1) / num_threads;
  for (int t = 0; t < num_threads; ++t) {
    const NodeId begin = t * block;
    const NodeId end = std::min<NodeId>(n_, begin + block);
    if (begin >= end) break;
    workers.emplace_back(rows, begin, end);
  }
  for (auto& w : workers) w.join();
  return out;
}

bool SparseOperator::IsSymmetric(double tolerance) const {
  for (NodeId i = 0; i < n_; ++i) {
    auto cols = RowColumns(i);
    auto vals = RowValues(i);
    for (size_t p = 0; p < cols.size(); ++p) {
      if (std::abs(vals[p] - At(cols[p], i)) > tolerance) return false;
    }
  }
  return true;
}

Matrix SparseOperator::ToDense() const {
  Matrix out = Matrix::Zero(n_, n_);
  for (NodeId i = 0; i < n_; ++i) {
    for (int64_t p = offsets_[i]; p < offsets_[i + 1]; ++p) {
      out(i, columns_[p]) = values_[p];
    }
  }
  return out;
}

SparseOperator NormalizedAdjacency(const Graph& graph) {
  const int32_t n = graph.num_nodes();
  auto weight = [&graph](NodeId u, NodeId v) {
    const double du = graph.Degree(u) + 1.0;
    const double dv = graph.Degree(v) + 1.0;
    return 1.0 / std::sqrt(du * dv);
  };
  std::vector<int64_t> offsets(n + 1, 0);
  std::vector<NodeId> columns;
  std::vector<double> values;
  columns.reserve(graph.neighbors().size() + n);
  values.reserve(graph.neighbors().size() + n);
  for (NodeId u = 0; u < n; ++u) {
    bool diagonal_done = false;
    for (NodeId v : graph.Neighbors(u)) {
      if (!diagonal_done && v > u) {
        columns.push_back(u);
        values.push_back(weight(u, u));
        diagonal_done = true;
      }
      columns.push_back(v);
      values.push_back(weight(u, v));
    }
    if (!diagonal_done) {
      columns.push_back(u);
      values.push_back(weight(u, u));
    }
    offsets[u + 1] = static_cast<int64_t>(columns.size());
  }
  return SparseOperator(n, std::move(offsets), std::move(columns),
                        std::move(values));
}

}  // namespace comfair
