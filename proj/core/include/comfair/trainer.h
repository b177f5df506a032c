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

#ifndef COMFAIR_TRAINER_H_
#define COMFAIR_TRAINER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "comfair/coreset.h"
#include "comfair/gcn.h"
#include "comfair/graph.h"
#include "comfair/split.h"

namespace comfair {

struct TrainConfig {
  int32_t epochs = 400;
  double learning_rate = 0.01;
  double lambda = 1.0;
  // L2 penalty on W1, W2 and Wp (not biases), applied in the update step.
  double weight_decay = 5e-4;
  int32_t hidden1 = 64;
  int32_t hidden2 = 64;
  uint64_t seed = 0;
  // Multiply per-node task-loss terms by coreset weights (others weigh 1).
  bool weighted_task_loss = false;
  // Row-parallel sparse products. Each row is still summed in a fixed order.
  int num_threads = 1;
};

absl::Status ValidateTrainConfig(const TrainConfig& config);

struct EpochRecord {
  double task_loss;
  double fair_loss;
  double total_loss;
  double train_acc;
  double val_acc;
};

struct TrainResult {
  // Parameters of the epoch with the best validation accuracy (earliest on
  // ties), i.e. the weights that produced that epoch's forward pass.
  ModelParams params;
  std::vector<EpochRecord> history;
  int32_t best_epoch = 0;
  double best_val_acc = 0.0;
  std::vector<std::string> warnings;
};

// Full-batch gradient descent on task + lambda * fair. Deterministic for a
// fixed config. CoresetOutsideTraining if a coreset node is not in
// split.train.
absl::StatusOr<TrainResult> Train(const Graph& graph, const NodeSplit& split,
                                  const std::vector<CoresetEntry>& coreset,
                                  const TrainConfig& config);

struct Predictions {
  std::vector<int32_t> label;  // argmax class, lowest id on ties
  std::vector<double> score;   // probability of class 1
};

absl::StatusOr<Predictions> Predict(const ModelParams& params,
                                    const Graph& graph);

// CSV "epoch,task_loss,fair_loss,total_loss,train_acc,val_acc".
std::string HistoryToCsv(const std::vector<EpochRecord>& history);

// CSV "node_id,pred_label,score".
std::string PredictionsToCsv(const Predictions& predictions);
absl::StatusOr<Predictions> PredictionsFromCsv(const std::string& csv,
                                               int32_t num_nodes);

// Binary bundle: "CFMODEL1", u64 little-endian header length, a JSON header
// (shapes, seed, tensor order), then every tensor as row-major little-endian
// 64-bit floats in w1, b1, w2, b2, wp, bp order.
std::string SerializeModel(const ModelParams& params, uint64_t seed);
absl::StatusOr<ModelParams> DeserializeModel(const std::string& bytes);

}  // namespace comfair

#endif  // COMFAIR_TRAINER_H_
