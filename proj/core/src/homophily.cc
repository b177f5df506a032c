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

#include "comfair/homophily.h"

#include <cmath>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "comfair/status.h"
#include "comfair/text_io.h"

namespace comfair {

std::optional<double> NodeHomophily(const Graph& graph, NodeId node) {
  const auto neighbors = graph.Neighbors(node);
  if (neighbors.empty()) return std::nullopt;
  const int32_t label = graph.labels()[node];
  int64_t same = 0;
  for (NodeId v : neighbors) same += graph.labels()[v] == label;
  return static_cast<double>(same) / static_cast<double>(neighbors.size());
}

HomophilyProfile ComputeHomophilyProfile(const Graph& graph) {
  const int32_t n = graph.num_nodes();
  const auto& labels = graph.labels();
  HomophilyProfile profile;
  profile.ratio.resize(n);
  profile.degree.resize(n);
  profile.same_label.assign(n, 0);
  for (NodeId u = 0; u < n; ++u) {
    const int32_t degree = graph.Degree(u);
    profile.degree[u] = degree;
    for (NodeId v : graph.Neighbors(u)) {
      profile.same_label[u] += labels[v] == labels[u];
    }
    if (degree > 0) {
      profile.ratio[u] = static_cast<double>(profile.same_label[u]) /
                         static_cast<double>(degree);
    }
  }
  return profile;
}

std::string HomophilyProfileToCsv(const HomophilyProfile& profile) {
  std::string out = "node_id,degree,ratio\n";
  for (size_t i = 0; i < profile.ratio.size(); ++i) {
    absl::StrAppend(&out, i, ",", profile.degree[i], ",",
                    profile.ratio[i] ? FormatDouble(*profile.ratio[i]) : "NA",
                    "\n");
  }
  return out;
}

absl::StatusOr<HomophilyProfile> HomophilyProfileFromCsv(const std::string& csv,
                                                         int32_t num_nodes) {
  HomophilyProfile profile;
  profile.ratio.resize(num_nodes);
  profile.degree.assign(num_nodes, -1);
  profile.same_label.assign(num_nodes, 0);
  const auto lines = SplitLines(csv);
  for (size_t line_no = 1; line_no < lines.size(); ++line_no) {
    if (lines[line_no].empty()) continue;
    std::vector<absl::string_view> fields = absl::StrSplit(lines[line_no], ',');
    int64_t node = 0;
    int64_t degree = 0;
    if (fields.size() != 3 || !ParseInt64(fields[0], &node) ||
        !ParseInt64(fields[1], &degree) || node < 0 || node >= num_nodes ||
        degree < 0) {
      return DataError("MalformedLine",
                       absl::StrCat("homophily line ", line_no + 1));
    }
    profile.degree[node] = static_cast<int32_t>(degree);
    if (fields[2] != "NA") {
      double ratio = 0.0;
      if (!ParseDouble(fields[2], &ratio) || degree == 0) {
        return DataError("MalformedLine",
                         absl::StrCat("homophily line ", line_no + 1));
      }
      profile.ratio[node] = ratio;
      profile.same_label[node] =
          static_cast<int32_t>(std::llround(ratio * static_cast<double>(degree)));
    }
  }
  for (int32_t d : profile.degree) {
    if (d < 0) return DataError("DimensionMismatch", "homophily rows missing");
  }
  return profile;
}

}  // namespace comfair
