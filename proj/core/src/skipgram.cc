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

#include "comfair/skipgram.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "absl/strings/str_cat.h"
#include "comfair/status.h"

namespace comfair {
namespace {

// log(sigmoid(x)) without overflow.
double LogSigmoid(double x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

std::vector<double> NoiseDistribution(const WalkCorpus& corpus,
                                      int32_t num_nodes) {
  std::vector<double> counts(num_nodes, 0.0);
  for (const auto& walk : corpus.walks) {
    for (NodeId v : walk) counts[v] += 1.0;
  }
  double total = 0.0;
  for (double& c : counts) {
    c = std::pow(c, 0.75);
    total += c;
  }
  if (total > 0) {
    for (double& c : counts) c /= total;
  }
  return counts;
}

NegativeSampler::NegativeSampler(const std::vector<double>& noise)
    : distribution_(noise.begin(), noise.end()) {
  for (size_t i = 0; i < noise.size(); ++i) {
    if (noise[i] > 0) support_.push_back(static_cast<NodeId>(i));
  }
}

std::optional<NodeId> NegativeSampler::Sample(NodeId exclude, Rng& rng) {
  if (support_.empty() || (support_.size() == 1 && support_[0] == exclude)) {
    return std::nullopt;
  }
  NodeId candidate = distribution_(rng);
  while (candidate == exclude) candidate = distribution_(rng);
  return candidate;
}

absl::StatusOr<SkipgramResult> TrainSkipgram(const WalkCorpus& corpus,
                                             int32_t num_nodes,
                                             const SkipgramParams& params,
                                             uint64_t seed) {
  int64_t tokens = 0;
  for (const auto& walk : corpus.walks) tokens += walk.size();
  if (tokens == 0) return ConfigError("EmptyCorpus", "no walks to train on");
  if (params.dim < 1 || params.window < 1 || params.negatives < 1 ||
      params.epochs < 1 || !(params.learning_rate > 0)) {
    return ConfigError("ConfigInvalid",
                       "dim, window, negatives, epochs must be >= 1 and "
                       "learning_rate > 0");
  }
  for (const auto& walk : corpus.walks) {
    for (NodeId v : walk) {
      if (v < 0 || v >= num_nodes) {
        return MakeError(absl::StatusCode::kOutOfRange, "NodeIdOutOfRange",
                         absl::StrCat("walk node ", v));
      }
    }
  }

  const int32_t d = params.dim;
  Rng rng = MakeRng(seed, /*stream=*/0x534753u);
  Matrix input(num_nodes, d);
  Matrix output = Matrix::Zero(num_nodes, d);
  std::uniform_real_distribution<double> init(-0.5 / d, 0.5 / d);
  for (Eigen::Index i = 0; i < input.size(); ++i) input.data()[i] = init(rng);

  NegativeSampler sampler(NoiseDistribution(corpus, num_nodes));
  std::vector<double> gradient(d);
  const double total_steps = static_cast<double>(tokens) * params.epochs;
  double processed = 0.0;

  SkipgramResult result;
  for (int32_t epoch = 0; epoch < params.epochs; ++epoch) {
    double loss_sum = 0.0;
    int64_t pairs = 0;
    for (const auto& walk : corpus.walks) {
      const int64_t len = static_cast<int64_t>(walk.size());
      for (int64_t i = 0; i < len; ++i) {
        const double lr = params.learning_rate *
                          std::max(1e-4, 1.0 - processed / total_steps);
        processed += 1.0;
        double* center = input.row(walk[i]).data();
        const int64_t lo = std::max<int64_t>(0, i - params.window);
        const int64_t hi = std::min<int64_t>(len - 1, i + params.window);
        for (int64_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const NodeId context = walk[j];
          std::fill(gradient.begin(), gradient.end(), 0.0);
          for (int32_t s = 0; s <= params.negatives; ++s) {
            NodeId target = context;
            double label = 1.0;
            if (s > 0) {
              auto negative = sampler.Sample(context, rng);
              if (!negative) break;
              target = *negative;
              label = 0.0;
            }
            double* out = output.row(target).data();
            double dot = 0.0;
            for (int32_t k = 0; k < d; ++k) dot += center[k] * out[k];
            loss_sum -= label > 0 ? LogSigmoid(dot) : LogSigmoid(-dot);
            const double g = (label - Sigmoid(dot)) * lr;
            for (int32_t k = 0; k < d; ++k) {
              gradient[k] += g * out[k];
              out[k] += g * center[k];
            }
          }
          for (int32_t k = 0; k < d; ++k) center[k] += gradient[k];
          ++pairs;
        }
      }
    }
    result.epoch_loss.push_back(pairs > 0 ? loss_sum / pairs : 0.0);
  }
  result.embeddings = std::move(input);
  return result;
}

}  // namespace comfair
