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

#include "comfair/split.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "comfair/random.h"
#include "comfair/status.h"
#include "comfair/text_io.h"

namespace comfair {
namespace {

struct Counts {
  int64_t train;
  int64_t val;
  int64_t test;
};

Counts Allocate(int64_t total, const SplitFractions& f) {
  int64_t train = std::llround(static_cast<double>(total) * f.train);
  int64_t val = std::llround(static_cast<double>(total) * f.val);
  train = std::min(train, total);
  val = std::min(val, total - train);
  return {train, val, total - train - val};
}

void Distribute(std::vector<NodeId>& pool, const Counts& counts,
                NodeSplit& split) {
  auto it = pool.begin();
  split.train.insert(split.train.end(), it, it + counts.train);
  it += counts.train;
  split.val.insert(split.val.end(), it, it + counts.val);
  it += counts.val;
  split.test.insert(split.test.end(), it, pool.end());
}

}  // namespace

absl::StatusOr<NodeSplit> SplitNodes(const Graph& graph,
                                     const SplitFractions& fractions,
                                     uint64_t seed, bool stratify_by_label) {
  if (!(fractions.train > 0) || !(fractions.val > 0) || !(fractions.test > 0)) {
    return ConfigError("FractionSumInvalid", "all fractions must be positive");
  }
  const double sum = fractions.train + fractions.val + fractions.test;
  if (std::abs(sum - 1.0) > 1e-9) {
    return ConfigError("FractionSumInvalid",
                       absl::StrCat("fractions sum to ", sum));
  }

  Rng rng = MakeRng(seed, /*stream=*/0x5350u);
  NodeSplit split;
  const int32_t n = graph.num_nodes();
  if (stratify_by_label) {
    std::vector<std::vector<NodeId>> by_class(graph.num_classes());
    for (NodeId i = 0; i < n; ++i) by_class[graph.labels()[i]].push_back(i);
    for (size_t c = 0; c < by_class.size(); ++c) {
      auto& pool = by_class[c];
      if (pool.empty()) continue;
      const Counts counts = Allocate(static_cast<int64_t>(pool.size()),
                                     fractions);
      if (counts.train < 1 || counts.val < 1 || counts.test < 1) {
        return PreconditionError(
            "ClassTooSmall",
            absl::StrCat("class ", c, " has ", pool.size(),
                         " nodes; cannot place it in every split"));
      }
      std::shuffle(pool.begin(), pool.end(), rng);
      Distribute(pool, counts, split);
    }
  } else {
    std::vector<NodeId> pool(n);
    for (NodeId i = 0; i < n; ++i) pool[i] = i;
    std::shuffle(pool.begin(), pool.end(), rng);
    Distribute(pool, Allocate(n, fractions), split);
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.test.begin(), split.test.end());
  if (split.train.empty() || split.val.empty() || split.test.empty()) {
    return PreconditionError("SplitEmpty",
                             absl::StrCat(n, " nodes cannot fill three splits"));
  }
  return split;
}

absl::Status ValidateSplit(const NodeSplit& split, int32_t num_nodes) {
  if (split.train.empty() || split.val.empty() || split.test.empty()) {
    return DataError("SplitEmpty", "every split must be non-empty");
  }
  std::vector<uint8_t> seen(num_nodes, 0);
  for (const auto* part : {&split.train, &split.val, &split.test}) {
    for (NodeId v : *part) {
      if (v < 0 || v >= num_nodes) {
        return MakeError(absl::StatusCode::kOutOfRange, "NodeIdOutOfRange",
                         absl::StrCat("split node ", v));
      }
      if (seen[v]++) {
        return DataError("SplitOverlap",
                         absl::StrCat("node ", v, " appears twice"));
      }
    }
  }
  return absl::OkStatus();
}

std::string SplitToCsv(const NodeSplit& split) {
  std::vector<std::pair<NodeId, const char*>> rows;
  for (NodeId v : split.train) rows.emplace_back(v, "train");
  for (NodeId v : split.val) rows.emplace_back(v, "val");
  for (NodeId v : split.test) rows.emplace_back(v, "test");
  std::sort(rows.begin(), rows.end());
  std::string out = "node_id,part\n";
  for (const auto& [v, part] : rows) absl::StrAppend(&out, v, ",", part, "\n");
  return out;
}

absl::StatusOr<NodeSplit> SplitFromCsv(const std::string& csv,
                                       int32_t num_nodes) {
  NodeSplit split;
  const auto lines = SplitLines(csv);
  for (size_t line_no = 1; line_no < lines.size(); ++line_no) {
    if (lines[line_no].empty()) continue;
    std::vector<absl::string_view> f = absl::StrSplit(lines[line_no], ',');
    int64_t node = 0;
    if (f.size() != 2 || !ParseInt64(f[0], &node)) {
      return DataError("MalformedLine", absl::StrCat("split line ", line_no + 1));
    }
    const NodeId v = static_cast<NodeId>(node);
    if (f[1] == "train") {
      split.train.push_back(v);
    } else if (f[1] == "val") {
      split.val.push_back(v);
    } else if (f[1] == "test") {
      split.test.push_back(v);
    } else {
      return DataError("MalformedLine", absl::StrCat("split line ", line_no + 1));
    }
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.test.begin(), split.test.end());
  COMFAIR_RETURN_IF_ERROR(ValidateSplit(split, num_nodes));
  return split;
}

}  // namespace comfair
