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

#include "comfair/coreset.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "comfair/random.h"
#include "comfair/status.h"
#include "comfair/text_io.h"

namespace comfair {
namespace {

struct Candidate {
  NodeId node;
  double ratio;
};

std::vector<NodeId> PickExtremal(std::vector<Candidate> pool, int32_t count) {
  std::vector<NodeId> picked;
  if (static_cast<int32_t>(pool.size()) <= count) {
    for (const Candidate& c : pool) picked.push_back(c.node);
    return picked;
  }
  const int32_t low = count / 2;
  const int32_t high = count - low;
  std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    return a.ratio != b.ratio ? a.ratio > b.ratio : a.node < b.node;
  });
  for (int32_t i = 0; i < high; ++i) picked.push_back(pool[i].node);
  std::vector<Candidate> rest(pool.begin() + high, pool.end());
  std::sort(rest.begin(), rest.end(), [](const Candidate& a, const Candidate& b) {
    return a.ratio != b.ratio ? a.ratio < b.ratio : a.node < b.node;
  });
  for (int32_t i = 0; i < low; ++i) picked.push_back(rest[i].node);
  return picked;
}

std::vector<NodeId> PickRandom(const std::vector<Candidate>& pool,
                               int32_t count, Rng& rng) {
  std::vector<NodeId> nodes;
  for (const Candidate& c : pool) nodes.push_back(c.node);
  if (static_cast<int32_t>(nodes.size()) <= count) return nodes;
  // Partial Fisher-Yates.
  for (int32_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<size_t> pick(i, nodes.size() - 1);
    std::swap(nodes[i], nodes[pick(rng)]);
  }
  nodes.resize(count);
  return nodes;
}

}  // namespace

absl::StatusOr<CoresetStrategy> ParseCoresetStrategy(const std::string& name) {
  if (name == "extremal") return CoresetStrategy::kExtremal;
  if (name == "random") return CoresetStrategy::kRandom;
  return ConfigError("ConfigInvalid",
                     absl::StrCat("unknown coreset strategy \"", name, "\""));
}

std::string CoresetStrategyName(CoresetStrategy strategy) {
  return strategy == CoresetStrategy::kExtremal ? "extremal" : "random";
}

std::vector<NodeId> Coreset::Nodes() const {
  std::vector<NodeId> nodes;
  nodes.reserve(entries.size());
  for (const auto& e : entries) nodes.push_back(e.node);
  return nodes;
}

int32_t CommunityBudget(int64_t community_size, int64_t total_nodes,
                        int32_t total_budget) {
  if (total_nodes <= 0) return 0;
  return static_cast<int32_t>((int64_t{total_budget} * community_size) /
                              total_nodes);
}

absl::StatusOr<Coreset> SelectCoreset(const Graph& graph,
                                      const std::vector<int32_t>& communities,
                                      const HomophilyProfile& profile,
                                      const NodeSplit& split,
                                      const CoresetOptions& options) {
  const int32_t n = graph.num_nodes();
  if (static_cast<int32_t>(communities.size()) != n ||
      static_cast<int32_t>(profile.ratio.size()) != n) {
    return DataError("DimensionMismatch",
                     "communities and profile must cover every node");
  }
  if (split.train.empty()) {
    return PreconditionError("EmptyTrainingSplit", "no training nodes");
  }
  if (options.total_budget < 0 ||
      (options.per_community_budget && *options.per_community_budget < 0)) {
    return ConfigError("ConfigInvalid", "coreset budget must be >= 0");
  }
  int32_t num_communities = 0;
  for (int32_t c : communities) {
    if (c < 0) return DataError("CommunityOutOfRange", "negative community");
    num_communities = std::max(num_communities, c + 1);
  }

  std::vector<int64_t> sizes(num_communities, 0);
  for (int32_t c : communities) ++sizes[c];
  // pools[2 * k + g]
  std::vector<std::vector<Candidate>> pools(2 * num_communities);
  for (NodeId v : split.train) {
    if (v < 0 || v >= n) {
      return MakeError(absl::StatusCode::kOutOfRange, "NodeIdOutOfRange",
                       absl::StrCat("training node ", v));
    }
    if (!profile.ratio[v]) continue;
    pools[2 * communities[v] + graph.sensitive()[v]].push_back(
        {v, *profile.ratio[v]});
  }

  Coreset coreset;
  coreset.strategy = options.strategy;
  coreset.total_budget =
      options.per_community_budget
          ? *options.per_community_budget * num_communities
          : options.total_budget;
  Rng rng = MakeRng(options.seed, /*stream=*/0x4353u);
  for (int32_t k = 0; k < num_communities; ++k) {
    const int32_t budget = options.per_community_budget
                               ? *options.per_community_budget
                               : CommunityBudget(sizes[k], n,
                                                 options.total_budget);
    coreset.community_budget.push_back(budget);
    const int32_t per_group = budget / 2;
    if (pools[2 * k].empty() || pools[2 * k + 1].empty()) {
      coreset.warnings.push_back(absl::StrCat(
          "CommunityWithoutBothGroups: community ", k,
          " lacks training candidates from group ",
          pools[2 * k].empty() ? 0 : 1));
    }
    for (uint8_t g = 0; g < 2; ++g) {
      const auto& pool = pools[2 * k + g];
      std::vector<NodeId> picked =
          options.strategy == CoresetStrategy::kExtremal
              ? PickExtremal(pool, per_group)
              : PickRandom(pool, per_group, rng);
      const int32_t selected = static_cast<int32_t>(picked.size());
      coreset.cells.push_back({k, g, per_group,
                               static_cast<int32_t>(pool.size()), selected,
                               per_group - selected});
      for (NodeId v : picked) {
        coreset.entries.push_back({v, k, g, *profile.ratio[v], 1.0});
      }
    }
  }
  return coreset;
}

std::string CoresetToCsv(const Coreset& coreset) {
  std::string out = "node_id,community,sensitive,ratio,weight\n";
  for (const auto& e : coreset.entries) {
    absl::StrAppend(&out, e.node, ",", e.community, ",",
                    static_cast<int>(e.sensitive), ",",
                    FormatDouble(e.homophily), ",", FormatDouble(e.weight),
                    "\n");
  }
  return out;
}

absl::StatusOr<std::vector<CoresetEntry>> CoresetEntriesFromCsv(
    const std::string& csv, int32_t num_nodes) {
  std::vector<CoresetEntry> entries;
  std::vector<uint8_t> seen(num_nodes, 0);
  const auto lines = SplitLines(csv);
  for (size_t line_no = 1; line_no < lines.size(); ++line_no) {
    if (lines[line_no].empty()) continue;
    std::vector<absl::string_view> f = absl::StrSplit(lines[line_no], ',');
    int64_t node = 0, community = 0, sensitive = 0;
    double ratio = 0.0, weight = 0.0;
    if (f.size() != 5 || !ParseInt64(f[0], &node) ||
        !ParseInt64(f[1], &community) || !ParseInt64(f[2], &sensitive) ||
        !ParseDouble(f[3], &ratio) || !ParseDouble(f[4], &weight) ||
        node < 0 || node >= num_nodes || (sensitive != 0 && sensitive != 1) ||
        weight < 0) {
      return DataError("MalformedLine",
                       absl::StrCat("coreset line ", line_no + 1));
    }
    if (seen[node]++) {
      return DataError("DuplicateCoresetNode", absl::StrCat("node ", node));
    }
    entries.push_back({static_cast<NodeId>(node),
                       static_cast<int32_t>(community),
                       static_cast<uint8_t>(sensitive), ratio, weight});
  }
  return entries;
}

}  // namespace comfair
