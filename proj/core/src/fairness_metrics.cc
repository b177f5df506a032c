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

#include "comfair/fairness_metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "absl/strings/str_cat.h"
#include "comfair/status.h"

namespace comfair {

absl::StatusOr<double> Accuracy(std::span<const int32_t> pred,
                                std::span<const int32_t> labels,
                                std::span<const NodeId> nodes) {
  if (nodes.empty()) return PreconditionError("EmptyScope", "no nodes");
  int64_t correct = 0;
  for (NodeId v : nodes) correct += pred[v] == labels[v];
  return static_cast<double>(correct) / static_cast<double>(nodes.size());
}

absl::StatusOr<double> Auc(std::span<const double> scores,
                           std::span<const int32_t> labels,
                           std::span<const NodeId> nodes) {
  std::vector<NodeId> order(nodes.begin(), nodes.end());
  for (NodeId v : order) {
    if (!std::isfinite(scores[v])) {
      return DataError("NonFiniteScore", absl::StrCat("node ", v));
    }
  }
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return scores[a] < scores[b];
  });
  int64_t positives = 0;
  for (NodeId v : order) positives += labels[v] == 1;
  const int64_t negatives = static_cast<int64_t>(order.size()) - positives;
  if (positives == 0 || negatives == 0) {
    return PreconditionError("SingleClassScope",
                             "AUC needs both positive and negative nodes");
  }
  // Sum of 1-based ranks of positives, ties sharing their average rank.
  // Doubled so every tie average stays an integer.
  int64_t twice_rank_sum = 0;
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) {
      ++j;
    }
    const int64_t twice_avg_rank = static_cast<int64_t>(i + 1 + j + 1);
    for (size_t t = i; t <= j; ++t) {
      if (labels[order[t]] == 1) twice_rank_sum += twice_avg_rank;
    }
    i = j + 1;
  }
  const double wins_twice =
      static_cast<double>(twice_rank_sum - positives * (positives + 1));
  return wins_twice / (2.0 * static_cast<double>(positives) *
                       static_cast<double>(negatives));
}

absl::StatusOr<Gap> StatisticalParity(std::span<const int32_t> pred,
                                      std::span<const uint8_t> sensitive,
                                      std::span<const NodeId> nodes) {
  int64_t count[2] = {0, 0};
  int64_t positive[2] = {0, 0};
  for (NodeId v : nodes) {
    ++count[sensitive[v]];
    positive[sensitive[v]] += pred[v] == 1;
  }
  if (count[0] == 0 || count[1] == 0) {
    return PreconditionError(
        "MissingGroup",
        absl::StrCat("sensitive group ", count[0] == 0 ? 0 : 1, " is absent"));
  }
  const double gap = static_cast<double>(positive[0]) / count[0] -
                     static_cast<double>(positive[1]) / count[1];
  return Gap{gap, std::abs(gap)};
}

absl::StatusOr<Gap> EqualOpportunity(std::span<const int32_t> pred,
                                     std::span<const int32_t> labels,
                                     std::span<const uint8_t> sensitive,
                                     std::span<const NodeId> nodes) {
  int64_t count[2] = {0, 0};
  int64_t hits[2] = {0, 0};
  for (NodeId v : nodes) {
    if (labels[v] != 1) continue;
    ++count[sensitive[v]];
    hits[sensitive[v]] += pred[v] == 1;
  }
  for (int g = 0; g < 2; ++g) {
    if (count[g] == 0) {
      return PreconditionError(
          "MissingPositives",
          absl::StrCat("group ", g, " has no positive-label nodes"));
    }
  }
  const double gap = static_cast<double>(hits[0]) / count[0] -
                     static_cast<double>(hits[1]) / count[1];
  return Gap{gap, std::abs(gap)};
}

}  // namespace comfair
