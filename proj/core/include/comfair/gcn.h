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

#ifndef COMFAIR_GCN_H_
#define COMFAIR_GCN_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "comfair/sparse_operator.h"
#include "comfair/types.h"

namespace comfair {

using RowVector = Eigen::RowVectorXd;

// Two graph-convolution layers followed by a linear predictor:
//   H1 = relu(A X W1 + b1)
//   H2 = relu(A H1 W2 + b2)
//   logits = H2 Wp + bp,  probs = softmax(logits) row-wise
struct ModelParams {
  Matrix w1;
  RowVector b1;
  Matrix w2;
  RowVector b2;
  Matrix wp;
  RowVector bp;

  static ModelParams Zeros(int32_t in_dim, int32_t hidden1, int32_t hidden2,
                           int32_t num_classes);
  // Glorot-uniform weights, zero biases.
  static ModelParams Glorot(int32_t in_dim, int32_t hidden1, int32_t hidden2,
                            int32_t num_classes, uint64_t seed);

  int32_t in_dim() const { return static_cast<int32_t>(w1.rows()); }
  int32_t num_classes() const { return static_cast<int32_t>(wp.cols()); }

  // The six tensors in serialization order: w1, b1, w2, b2, wp, bp.
  std::vector<std::span<double>> Tensors();
  std::vector<std::span<const double>> Tensors() const;
  static const std::vector<std::string>& TensorNames();

  absl::Status Validate() const;
};

struct ForwardResult {
  Matrix ax;  // A X, cached across epochs by the trainer
  Matrix z1;
  Matrix h1;
  Matrix ah1;
  Matrix z2;
  Matrix h2;
  Matrix logits;
  Matrix probs;
};

// DimensionMismatch when shapes disagree.
absl::StatusOr<ForwardResult> Forward(const ModelParams& params,
                                      const SparseOperator& adjacency,
                                      const Matrix& features,
                                      int num_threads = 1);

// Same as Forward with a precomputed A X.
absl::StatusOr<ForwardResult> ForwardFromAggregated(
    const ModelParams& params, const SparseOperator& adjacency, Matrix ax,
    int num_threads = 1);

inline constexpr double kProbabilityFloor = 1e-12;

// -(1/|mask|) sum_{i in mask} w_i log max(probs[i, y_i], 1e-12), with
// w_i = 1 unless `node_weights` (indexed by node) is given. EmptyMask.
absl::StatusOr<double> TaskLoss(const Matrix& probs,
                                const std::vector<int32_t>& labels,
                                std::span<const int32_t> mask,
                                const std::vector<double>* node_weights = nullptr);

// Similarity-parity loss over coreset embeddings.
struct FairnessLossResult {
  double value = 0.0;
  double group_mean_similarity[2] = {0.0, 0.0};
  int32_t group_size[2] = {0, 0};
  // d value / d embeddings, same shape as the input; empty unless requested.
  Matrix gradient;
  std::vector<std::string> warnings;
};

// |mean_{i<j in y=0} cos(z_i, z_j) - mean_{i<j in y=1} cos(z_i, z_j)|.
// Rows of `embeddings` are coreset members, `labels` their classes; members
// with labels other than 0/1 are ignored. Zero vectors have similarity 0 to
// everything. A group with fewer than two members contributes 0 and a
// warning. The gradient uses sign(0) = 0 at the kink.
FairnessLossResult FairnessLoss(const Matrix& embeddings,
                                std::span<const int32_t> labels,
                                bool with_gradient = false);

inline double TotalLoss(double task, double fair, double lambda) {
  return task + lambda * fair;
}

struct LossInputs {
  const std::vector<int32_t>* labels = nullptr;
  std::span<const int32_t> mask;
  std::span<const int32_t> coreset;  // node ids
  double lambda = 1.0;
  const std::vector<double>* node_weights = nullptr;
};

struct GradientResult {
  ModelParams gradient;
  double task_loss = 0.0;
  double fair_loss = 0.0;
  double total_loss = 0.0;
  ForwardResult forward;
  std::vector<std::string> warnings;
};

// Exact reverse-mode gradients of TotalLoss(task, fair, lambda) with respect
// to every parameter. The fairness term is evaluated on H2 rows of the
// coreset nodes and is skipped entirely when lambda == 0.
absl::StatusOr<GradientResult> Gradients(const ModelParams& params,
                                         const SparseOperator& adjacency,
                                         const Matrix& features,
                                         const LossInputs& inputs,
                                         int num_threads = 1);

// Same as Gradients with a precomputed A X.
absl::StatusOr<GradientResult> GradientsFromAggregated(
    const ModelParams& params, const SparseOperator& adjacency,
    const Matrix& ax, const LossInputs& inputs, int num_threads = 1);

}  // namespace comfair

#endif  // COMFAIR_GCN_H_
