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

#ifndef COMFAIR_SBM_H_
#define COMFAIR_SBM_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "comfair/graph.h"

namespace comfair {

// Stochastic block model with a sensitive attribute aligned to blocks and a
// per-block label-homophily target.
//
// Nodes are numbered block by block. Block b has majority sensitive bit
// b % 2; each node takes the majority bit with probability `sens_alignment`.
// Features are class means (+signal/2 / -signal/2 in alternating
// coordinates, so the per-coordinate separation between two classes is
// `feature_signal`) plus unit Gaussian noise.
struct SbmConfig {
  std::vector<int32_t> block_sizes;
  double p_in = 0.1;
  double p_out = 0.01;
  double sens_alignment = 1.0;
  // One target per block, or empty to keep plain SBM edges.
  std::vector<double> label_homophily;
  // Optional per-block P(label = 1) (binary only); empty means uniform.
  std::vector<double> label_prior;
  int32_t num_classes = 2;
  int32_t feature_dim = 8;
  double feature_signal = 1.0;
};

// ConfigInvalid on any out-of-range field.
absl::Status ValidateSbmConfig(const SbmConfig& config);

// Candidate edges are drawn from the SBM; within a block, same-label and
// cross-label candidates are then thinned with acceptance probabilities
// solved from the block's realized labels so the expected fraction of
// same-label within-block edges equals the block's target.
absl::StatusOr<Graph> GenerateSbm(const SbmConfig& config, uint64_t seed);

// Block id of every node, following the generator's numbering.
std::vector<int32_t> SbmBlockOf(const SbmConfig& config);

// JSON object with the SbmConfig field names. Unknown keys are rejected.
absl::StatusOr<SbmConfig> ParseSbmConfig(absl::string_view json_text);
std::string SbmConfigToJson(const SbmConfig& config);

}  // namespace comfair

#endif  // COMFAIR_SBM_H_
