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

#ifndef COMFAIR_FAIRNESS_METRICS_H_
#define COMFAIR_FAIRNESS_METRICS_H_

#include <cstdint>
#include <span>

#include "absl/status/statusor.h"
#include "comfair/types.h"

namespace comfair {

// Metrics are evaluated over `nodes`, a subset of node ids indexing the
// per-node arrays. Class 1 is the positive class; sensitive groups are 0/1.

// Fraction of nodes with pred == label. EmptyScope.
absl::StatusOr<double> Accuracy(std::span<const int32_t> pred,
                                std::span<const int32_t> labels,
                                std::span<const NodeId> nodes);

// P(score of a random positive > score of a random negative), ties 1/2.
// Computed from tie-averaged ranks. SingleClassScope.
absl::StatusOr<double> Auc(std::span<const double> scores,
                           std::span<const int32_t> labels,
                           std::span<const NodeId> nodes);

struct Gap {
  double signed_gap;  // group 0 minus group 1
  double abs_gap;
};

// P(pred = 1 | s = 0) - P(pred = 1 | s = 1). MissingGroup.
absl::StatusOr<Gap> StatisticalParity(std::span<const int32_t> pred,
                                      std::span<const uint8_t> sensitive,
                                      std::span<const NodeId> nodes);

// P(pred = 1 | y = 1, s = 0) - P(pred = 1 | y = 1, s = 1). MissingPositives.
absl::StatusOr<Gap> EqualOpportunity(std::span<const int32_t> pred,
                                     std::span<const int32_t> labels,
                                     std::span<const uint8_t> sensitive,
                                     std::span<const NodeId> nodes);

}  // namespace comfair

#endif  // COMFAIR_FAIRNESS_METRICS_H_
