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

#include "comfair/gcn.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "comfair/random.h"
#include "comfair/status.h"

namespace comfair {
namespace {

absl::Status ShapeError(absl::string_view detail) {
  return PreconditionError("DimensionMismatch", detail);
}

Matrix Relu(const Matrix& z) { return z.cwiseMax(0.0); }

Matrix RowSoftmax(const Matrix& logits) {
  Matrix probs(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double max = logits.row(i).maxCoeff();
    probs.row(i) = (logits.row(i).array() - max).exp().matrix();
    probs.row(i) /= probs.row(i).sum();
  }
  return probs;
}

void FillUniform(Matrix& m, double limit, Rng& rng) {
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
}

// Mean pairwise cosine similarity of one label group and, optionally, its
// gradient with respect to the group's rows. With unit vectors u_i and
// S = sum u_i, sum_{i<j} u_i.u_j = (|S|^2 - m_nonzero) / 2.
double GroupSimilarity(const Matrix& z, const std::vector<Eigen::Index>& rows,
                       double sign, Matrix* gradient) {
  const double m = static_cast<double>(rows.size());
  if (rows.size() < 2) return 0.0;
  const Eigen::Index d = z.cols();
  Matrix unit = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), d);
  std::vector<double> norms(rows.size());
  Eigen::RowVectorXd sum = Eigen::RowVectorXd::Zero(d);
  double nonzero = 0.0;
  for (size_t a = 0; a < rows.size(); ++a) {
    norms[a] = z.row(rows[a]).norm();
    if (norms[a] > 0.0) {
      unit.row(a) = z.row(rows[a]) / norms[a];
      sum += unit.row(a);
      nonzero += 1.0;
    }
  }
  const double scale = 2.0 / (m * (m - 1.0));
  const double mean = 0.5 * scale * (sum.squaredNorm() - nonzero);
  if (gradient != nullptr && sign != 0.0) {
    for (size_t a = 0; a < rows.size(); ++a) {
      if (norms[a] == 0.0) continue;
      const Eigen::RowVectorXd others = sum - unit.row(a);
      const double along = unit.row(a).dot(others);
      gradient->row(rows[a]) +=
          (sign * scale / norms[a]) * (others - along * unit.row(a));
    }
  }
  return mean;
}

}  // namespace

ModelParams ModelParams::Zeros(int32_t in_dim, int32_t hidden1,
                               int32_t hidden2, int32_t num_classes) {
  ModelParams p;
  p.w1 = Matrix::Zero(in_dim, hidden1);
  p.b1 = RowVector::Zero(hidden1);
  p.w2 = Matrix::Zero(hidden1, hidden2);
  p.b2 = RowVector::Zero(hidden2);
  p.wp = Matrix::Zero(hidden2, num_classes);
  p.bp = RowVector::Zero(num_classes);
  return p;
}

ModelParams ModelParams::Glorot(int32_t in_dim, int32_t hidden1,
                                int32_t hidden2, int32_t num_classes,
                                uint64_t seed) {
  ModelParams p = Zeros(in_dim, hidden1, hidden2, num_classes);
  Rng rng = MakeRng(seed, /*stream=*/0x47434eu);
  FillUniform(p.w1, std::sqrt(6.0 / (in_dim + hidden1)), rng);
  FillUniform(p.w2, std::sqrt(6.0 / (hidden1 + hidden2)), rng);
  FillUniform(p.wp, std::sqrt(6.0 / (hidden2 + num_classes)), rng);
  return p;
}

std::vector<std::span<double>> ModelParams::Tensors() {
  return {{w1.data(), static_cast<size_t>(w1.size())},
          {b1.data(), static_cast<size_t>(b1.size())},
          {w2.data(), static_cast<size_t>(w2.size())},
          {b2.data(), static_cast<size_t>(b2.size())},
          {wp.data(), static_cast<size_t>(wp.size())},
          {bp.data(), static_cast<size_t>(bp.size())}};
}

std::vector<std::span<const double>> ModelParams::Tensors() const {
  return {{w1.data(), static_cast<size_t>(w1.size())},
          {b1.data(), static_cast<size_t>(b1.size())},
          {w2.data(), static_cast<size_t>(w2.size())},
          {b2.data(), static_cast<size_t>(b2.size())},
          {wp.data(), static_cast<size_t>(wp.size())},
          {bp.data(), static_cast<size_t>(bp.size())}};
}

const std::vector<std::string>& ModelParams::TensorNames() {
  static const std::vector<std::string>* names =
      new std::vector<std::string>{"w1", "b1", "w2", "b2", "wp", "bp"};
  return *names;
}

absl::Status ModelParams::Validate() const {
  if (b1.size() != w1.cols() || w2.rows() != w1.cols() ||
      b2.size() != w2.cols() || wp.rows() != w2.cols() ||
      bp.size() != wp.cols()) {
    return ShapeError("inconsistent parameter shapes");
  }
  for (const auto& t : Tensors()) {
    for (double v : t) {
      if (!std::isfinite(v)) {
        return PreconditionError("NonFiniteParameter",
                                 "parameters contain NaN or Inf");
      }
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<ForwardResult> ForwardFromAggregated(
    const ModelParams& params, const SparseOperator& adjacency, Matrix ax,
    int num_threads) {
  COMFAIR_RETURN_IF_ERROR(params.Validate());
  if (ax.rows() != adjacency.size()) {
    return ShapeError("feature rows != operator size");
  }
  if (ax.cols() != params.w1.rows()) {
    return ShapeError(absl::StrCat("feature dim ", ax.cols(), " != W1 rows ",
                                   params.w1.rows()));
  }
  ForwardResult f;
  f.ax = std::move(ax);
  f.z1 = f.ax * params.w1;
  f.z1.rowwise() += params.b1;
  f.h1 = Relu(f.z1);
  f.ah1 = adjacency.Multiply(f.h1, num_threads);
  f.z2 = f.ah1 * params.w2;
  f.z2.rowwise() += params.b2;
  f.h2 = Relu(f.z2);
  f.logits = f.h2 * params.wp;
  f.logits.rowwise() += params.bp;
  f.probs = RowSoftmax(f.logits);
  return f;
}

absl::StatusOr<ForwardResult> Forward(const ModelParams& params,
                                      const SparseOperator& adjacency,
                                      const Matrix& features,
                                      int num_threads) {
  if (features.rows() != adjacency.size()) {
    return ShapeError("feature rows != operator size");
  }
  return ForwardFromAggregated(params, adjacency,
                               adjacency.Multiply(features, num_threads),
                               num_threads);
}

absl::StatusOr<double> TaskLoss(const Matrix& probs,
                                const std::vector<int32_t>& labels,
                                std::span<const int32_t> mask,
                                const std::vector<double>* node_weights) {
  if (mask.empty()) return PreconditionError("EmptyMask", "mask is empty");
  double total = 0.0;
  for (int32_t i : mask) {
    if (i < 0 || i >= probs.rows() || labels[i] < 0 ||
        labels[i] >= probs.cols()) {
      return ShapeError(absl::StrCat("mask node ", i, " out of range"));
    }
    const double w = node_weights ? (*node_weights)[i] : 1.0;
    total -= w * std::log(std::max(probs(i, labels[i]), kProbabilityFloor));
  }
  return total / static_cast<double>(mask.size());
}

FairnessLossResult FairnessLoss(const Matrix& embeddings,
                                std::span<const int32_t> labels,
                                bool with_gradient) {
  FairnessLossResult result;
  std::vector<Eigen::Index> groups[2];
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0 || labels[i] == 1) {
      groups[labels[i]].push_back(static_cast<Eigen::Index>(i));
    }
  }
  for (int g = 0; g < 2; ++g) {
    result.group_size[g] = static_cast<int32_t>(groups[g].size());
    if (groups[g].size() < 2) {
      result.warnings.push_back(absl::StrCat(
          "SmallLabelGroup: label group ", g, " has ", groups[g].size(),
          " coreset members; its mean similarity is taken as 0"));
    }
    result.group_mean_similarity[g] =
        GroupSimilarity(embeddings, groups[g], 0.0, nullptr);
  }
  const double diff =
      result.group_mean_similarity[0] - result.group_mean_similarity[1];
  result.value = std::abs(diff);
  if (with_gradient) {
    result.gradient = Matrix::Zero(embeddings.rows(), embeddings.cols());
    const double sign = diff > 0 ? 1.0 : (diff < 0 ? -1.0 : 0.0);
    GroupSimilarity(embeddings, groups[0], sign, &result.gradient);
    GroupSimilarity(embeddings, groups[1], -sign, &result.gradient);
  }
  return result;
}

absl::StatusOr<GradientResult> GradientsFromAggregated(
    const ModelParams& params, const SparseOperator& adjacency,
    const Matrix& ax, const LossInputs& inputs, int num_threads) {
  if (inputs.labels == nullptr) return ShapeError("labels missing");
  const std::vector<int32_t>& labels = *inputs.labels;
  if (static_cast<Eigen::Index>(labels.size()) != ax.rows()) {
    return ShapeError("label count != node count");
  }
  if (!(inputs.lambda >= 0)) {
    return ConfigError("ConfigInvalid", "lambda must be >= 0");
  }
  GradientResult out;
  COMFAIR_ASSIGN_OR_RETURN(
      out.forward, ForwardFromAggregated(params, adjacency, ax, num_threads));
  const ForwardResult& f = out.forward;
  COMFAIR_ASSIGN_OR_RETURN(out.task_loss, TaskLoss(f.probs, labels, inputs.mask,
                                                   inputs.node_weights));

  const double inv_mask = 1.0 / static_cast<double>(inputs.mask.size());
  Matrix d_logits = Matrix::Zero(f.logits.rows(), f.logits.cols());
  for (int32_t i : inputs.mask) {
    if (f.probs(i, labels[i]) <= kProbabilityFloor) continue;
    const double w =
        (inputs.node_weights ? (*inputs.node_weights)[i] : 1.0) * inv_mask;
    d_logits.row(i) += w * f.probs.row(i);
    d_logits(i, labels[i]) -= w;
  }

  Matrix d_h2 = d_logits * params.wp.transpose();
  if (inputs.lambda > 0 && !inputs.coreset.empty()) {
    Matrix z(static_cast<Eigen::Index>(inputs.coreset.size()), f.h2.cols());
    std::vector<int32_t> coreset_labels(inputs.coreset.size());
    for (size_t a = 0; a < inputs.coreset.size(); ++a) {
      const int32_t v = inputs.coreset[a];
      if (v < 0 || v >= f.h2.rows()) {
        return ShapeError(absl::StrCat("coreset node ", v, " out of range"));
      }
      z.row(a) = f.h2.row(v);
      coreset_labels[a] = labels[v];
    }
    FairnessLossResult fair = FairnessLoss(z, coreset_labels, true);
    out.fair_loss = fair.value;
    out.warnings = std::move(fair.warnings);
    for (size_t a = 0; a < inputs.coreset.size(); ++a) {
      d_h2.row(inputs.coreset[a]) += inputs.lambda * fair.gradient.row(a);
    }
  }
  out.total_loss = TotalLoss(out.task_loss, out.fair_loss, inputs.lambda);

  ModelParams& g = out.gradient;
  g.wp = f.h2.transpose() * d_logits;
  g.bp = d_logits.colwise().sum();
  const Matrix d_z2 =
      d_h2.cwiseProduct((f.z2.array() > 0.0).cast<double>().matrix());
  g.w2 = f.ah1.transpose() * d_z2;
  g.b2 = d_z2.colwise().sum();
  // A is symmetric, so A^T (dZ2 W2^T) is another A product.
  const Matrix d_h1 =
      adjacency.Multiply(d_z2 * params.w2.transpose(), num_threads);
  const Matrix d_z1 =
      d_h1.cwiseProduct((f.z1.array() > 0.0).cast<double>().matrix());
  g.w1 = f.ax.transpose() * d_z1;
  g.b1 = d_z1.colwise().sum();
  return out;
}

absl::StatusOr<GradientResult> Gradients(const ModelParams& params,
                                         const SparseOperator& adjacency,
                                         const Matrix& features,
                                         const LossInputs& inputs,
                                         int num_threads) {
  if (features.rows() != adjacency.size()) {
    return ShapeError("feature rows != operator size");
  }
  return GradientsFromAggregated(params, adjacency,
                                 adjacency.Multiply(features, num_threads),
                                 inputs, num_threads);
}

}  // namespace comfair
