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

#ifndef COMFAIR_SKIPGRAM_H_
#define COMFAIR_SKIPGRAM_H_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "absl/status/statusor.h"
#include "comfair/random.h"
#include "comfair/random_walk.h"
#include "comfair/types.h"

namespace comfair {

struct SkipgramParams {
  int32_t dim = 64;
  int32_t window = 5;
  int32_t negatives = 5;
  int32_t epochs = 5;
  // Decays linearly to 1e-4 * learning_rate over all epochs.
  double learning_rate = 0.025;
};

struct SkipgramResult {
  Matrix embeddings;               // n x dim, input vectors
  std::vector<double> epoch_loss;  // mean loss per (center, context) pair
};

// Unigram counts of the corpus raised to 3/4, normalized to sum 1.
std::vector<double> NoiseDistribution(const WalkCorpus& corpus,
                                      int32_t num_nodes);

// Draws negatives from a noise distribution, never returning the excluded
// (positive context) node.
class NegativeSampler {
 public:
  explicit NegativeSampler(const std::vector<double>& noise);

  // nullopt only when the excluded node carries all of the noise mass.
  std::optional<NodeId> Sample(NodeId exclude, Rng& rng);

 private:
  std::discrete_distribution<NodeId> distribution_;
  std::vector<NodeId> support_;
};

// Skip-gram with negative sampling over (center, context) pairs within
// `window` positions. Single-threaded and bitwise deterministic for a seed.
// EmptyCorpus / ConfigInvalid on bad input.
absl::StatusOr<SkipgramResult> TrainSkipgram(const WalkCorpus& corpus,
                                             int32_t num_nodes,
                                             const SkipgramParams& params,
                                             uint64_t seed);

}  // namespace comfair

#endif  // COMFAIR_SKIPGRAM_H_
