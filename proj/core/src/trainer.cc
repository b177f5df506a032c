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

#include "comfair/trainer.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <set>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "comfair/sparse_operator.h"
#include "comfair/status.h"
#include "comfair/text_io.h"
#include "json.hpp"

namespace comfair {
namespace {

static_assert(std::endian::native == std::endian::little,
              "model bundles are written in native little-endian order");

constexpr char kModelMagic[] = "CFMODEL1";

double MaskAccuracy(const Matrix& probs, const std::vector<int32_t>& labels,
                    std::span<const int32_t> mask) {
  if (mask.empty()) return 0.0;
  int64_t correct = 0;
  for (int32_t i : mask) {
    Eigen::Index best = 0;
    probs.row(i).maxCoeff(&best);
    correct += best == labels[i];
  }
  return static_cast<double>(correct) / static_cast<double>(mask.size());
}

void Descend(Matrix& w, const Matrix& g, double lr, double decay) {
  w -= lr * (g + decay * w);
}

void Descend(RowVector& b, const RowVector& g, double lr) { b -= lr * g; }

}  // namespace

absl::Status ValidateTrainConfig(const TrainConfig& config) {
  if (config.epochs < 1) return ConfigError("ConfigInvalid", "epochs < 1");
  if (!(config.learning_rate > 0)) {
    return ConfigError("ConfigInvalid", "learning_rate must be > 0");
  }
  if (!(config.lambda >= 0)) {
    return ConfigError("ConfigInvalid", "lambda must be >= 0");
  }
  if (!(config.weight_decay >= 0)) {
    return ConfigError("ConfigInvalid", "weight_decay must be >= 0");
  }
  if (config.hidden1 < 1 || config.hidden2 < 1) {
    return ConfigError("ConfigInvalid", "hidden dimensions must be >= 1");
  }
  return absl::OkStatus();
}

absl::StatusOr<TrainResult> Train(const Graph& graph, const NodeSplit& split,
                                  const std::vector<CoresetEntry>& coreset,
                                  const TrainConfig& config) {
  COMFAIR_RETURN_IF_ERROR(ValidateTrainConfig(config));
  COMFAIR_RETURN_IF_ERROR(ValidateSplit(split, graph.num_nodes()));
  std::vector<int32_t> coreset_nodes;
  std::vector<double> node_weights;
  if (config.weighted_task_loss) node_weights.assign(graph.num_nodes(), 1.0);
  for (const CoresetEntry& e : coreset) {
    if (!std::binary_search(split.train.begin(), split.train.end(), e.node)) {
      return PreconditionError(
          "CoresetOutsideTraining",
          absl::StrCat("coreset node ", e.node, " is not a training node"));
    }
    coreset_nodes.push_back(e.node);
    if (config.weighted_task_loss) node_weights[e.node] = e.weight;
  }

  const SparseOperator adjacency = NormalizedAdjacency(graph);
  const Matrix ax = adjacency.Multiply(graph.features(), config.num_threads);
  ModelParams params =
      ModelParams::Glorot(graph.feature_dim(), config.hidden1, config.hidden2,
                          graph.num_classes(), config.seed);

  LossInputs inputs;
  inputs.labels = &graph.labels();
  inputs.mask = split.train;
  inputs.coreset = coreset_nodes;
  inputs.lambda = config.lambda;
  inputs.node_weights = config.weighted_task_loss ? &node_weights : nullptr;

  TrainResult result;
  std::set<std::string> warnings;
  result.best_val_acc = -1.0;
  for (int32_t epoch = 0; epoch < config.epochs; ++epoch) {
    COMFAIR_ASSIGN_OR_RETURN(
        GradientResult step,
        GradientsFromAggregated(params, adjacency, ax, inputs,
                                config.num_threads));
    warnings.insert(step.warnings.begin(), step.warnings.end());
    EpochRecord record;
    record.task_loss = step.task_loss;
    record.fair_loss = step.fair_loss;
    record.total_loss = step.total_loss;
    record.train_acc =
        MaskAccuracy(step.forward.probs, graph.labels(), split.train);
    record.val_acc = MaskAccuracy(step.forward.probs, graph.labels(), split.val);
    if (!std::isfinite(record.total_loss)) {
      return MakeError(absl::StatusCode::kInternal, "Diverged",
                       absl::StrCat("non-finite loss at epoch ", epoch));
    }
    result.history.push_back(record);
    if (record.val_acc > result.best_val_acc) {
      result.best_val_acc = record.val_acc;
      result.best_epoch = epoch;
      result.params = params;
    }

    const ModelParams& g = step.gradient;
    const double lr = config.learning_rate;
    Descend(params.w1, g.w1, lr, config.weight_decay);
    Descend(params.b1, g.b1, lr);
    Descend(params.w2, g.w2, lr, config.weight_decay);
    Descend(params.b2, g.b2, lr);
    Descend(params.wp, g.wp, lr, config.weight_decay);
    Descend(params.bp, g.bp, lr);
  }
  result.warnings.assign(warnings.begin(), warnings.end());
  return result;
}

absl::StatusOr<Predictions> Predict(const ModelParams& params,
                                    const Graph& graph) {
  COMFAIR_ASSIGN_OR_RETURN(
      ForwardResult f,
      Forward(params, NormalizedAdjacency(graph), graph.features()));
  Predictions out;
  out.label.resize(graph.num_nodes());
  out.score.resize(graph.num_nodes());
  for (NodeId i = 0; i < graph.num_nodes(); ++i) {
    Eigen::Index best = 0;
    f.probs.row(i).maxCoeff(&best);
    out.label[i] = static_cast<int32_t>(best);
    out.score[i] = f.probs.cols() > 1 ? f.probs(i, 1) : 0.0;
  }
  return out;
}

std::string HistoryToCsv(const std::vector<EpochRecord>& history) {
  std::string out = "epoch,task_loss,fair_loss,total_loss,train_acc,val_acc\n";
  for (size_t e = 0; e < history.size(); ++e) {
    const EpochRecord& r = history[e];
    absl::StrAppend(&out, e, ",", FormatDouble(r.task_loss), ",",
                    FormatDouble(r.fair_loss), ",", FormatDouble(r.total_loss),
                    ",", FormatDouble(r.train_acc), ",",
                    FormatDouble(r.val_acc), "\n");
  }
  return out;
}

std::string PredictionsToCsv(const Predictions& predictions) {
  std::string out = "node_id,pred_label,score\n";
  for (size_t i = 0; i < predictions.label.size(); ++i) {
    absl::StrAppend(&out, i, ",", predictions.label[i], ",",
                    FormatDouble(predictions.score[i]), "\n");
  }
  return out;
}

absl::StatusOr<Predictions> PredictionsFromCsv(const std::string& csv,
                                               int32_t num_nodes) {
  Predictions out;
  out.label.assign(num_nodes, -1);
  out.score.assign(num_nodes, 0.0);
  const auto lines = SplitLines(csv);
  for (size_t line_no = 1; line_no < lines.size(); ++line_no) {
    if (lines[line_no].empty()) continue;
    std::vector<absl::string_view> f = absl::StrSplit(lines[line_no], ',');
    int64_t node = 0;
    int64_t label = 0;
    double score = 0.0;
    if (f.size() != 3 || !ParseInt64(f[0], &node) ||
        !ParseInt64(f[1], &label) || !ParseDouble(f[2], &score) || node < 0 ||
        node >= num_nodes || label < 0) {
      return DataError("MalformedLine",
                       absl::StrCat("predictions line ", line_no + 1));
    }
    out.label[node] = static_cast<int32_t>(label);
    out.score[node] = score;
  }
  return out;
}

std::string SerializeModel(const ModelParams& params, uint64_t seed) {
  nlohmann::json header;
  header["format"] = "comfair-gcn";
  header["version"] = 1;
  header["seed"] = seed;
  header["in_dim"] = params.w1.rows();
  header["hidden1"] = params.w1.cols();
  header["hidden2"] = params.w2.cols();
  header["num_classes"] = params.wp.cols();
  header["tensors"] = ModelParams::TensorNames();
  const std::string header_text = header.dump();
  std::string out(kModelMagic);
  const uint64_t length = header_text.size();
  out.append(reinterpret_cast<const char*>(&length), sizeof(length));
  out += header_text;
  for (const auto& tensor : params.Tensors()) {
    out.append(reinterpret_cast<const char*>(tensor.data()),
               tensor.size() * sizeof(double));
  }
  return out;
}

absl::StatusOr<ModelParams> DeserializeModel(const std::string& bytes) {
  const size_t magic_len = sizeof(kModelMagic) - 1;
  if (bytes.size() < magic_len + sizeof(uint64_t) ||
      bytes.compare(0, magic_len, kModelMagic) != 0) {
    return DataError("MalformedModel", "missing model magic");
  }
  uint64_t length = 0;
  std::memcpy(&length, bytes.data() + magic_len, sizeof(length));
  const size_t body = magic_len + sizeof(length);
  if (bytes.size() < body + length) {
    return DataError("MalformedModel", "truncated header");
  }
  nlohmann::json header =
      nlohmann::json::parse(bytes.substr(body, length), nullptr, false);
  if (header.is_discarded() || !header.contains("in_dim") ||
      !header.contains("hidden1") || !header.contains("hidden2") ||
      !header.contains("num_classes")) {
    return DataError("MalformedModel", "bad header");
  }
  ModelParams params = ModelParams::Zeros(
      header["in_dim"].get<int32_t>(), header["hidden1"].get<int32_t>(),
      header["hidden2"].get<int32_t>(), header["num_classes"].get<int32_t>());
  size_t offset = body + length;
  for (const auto& tensor : params.Tensors()) {
    const size_t n = tensor.size() * sizeof(double);
    if (bytes.size() < offset + n) {
      return DataError("MalformedModel", "truncated tensor data");
    }
    std::memcpy(tensor.data(), bytes.data() + offset, n);
    offset += n;
  }
  if (offset != bytes.size()) {
    return DataError("MalformedModel", "trailing bytes");
  }
  COMFAIR_RETURN_IF_ERROR(params.Validate());
  return params;
}

}  // namespace comfair
