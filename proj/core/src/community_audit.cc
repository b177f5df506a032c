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

#include "comfair/community_audit.h"

#include <algorithm>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "comfair/fairness_metrics.h"
#include "comfair/status.h"
#include "comfair/text_io.h"
#include "json.hpp"

namespace comfair {
namespace {

template <typename T>
std::optional<T> OrUndefined(const absl::StatusOr<T>& value) {
  if (!value.ok()) return std::nullopt;
  return *value;
}

ScopeRecord Evaluate(const AuditInputs& in, std::string scope,
                     int32_t community, std::span<const NodeId> nodes) {
  ScopeRecord r;
  r.scope = std::move(scope);
  r.community = community;
  r.num_nodes = static_cast<int32_t>(nodes.size());
  for (NodeId v : nodes) {
    ++r.group_count[in.sensitive[v]];
    r.group_positives[in.sensitive[v]] += in.labels[v] == 1;
  }
  r.acc = OrUndefined(Accuracy(in.pred, in.labels, nodes));
  r.auc = OrUndefined(Auc(in.scores, in.labels, nodes));
  if (auto sp = StatisticalParity(in.pred, in.sensitive, nodes); sp.ok()) {
    r.sp_signed = sp->signed_gap;
    r.sp_abs = sp->abs_gap;
  }
  if (auto eo = EqualOpportunity(in.pred, in.labels, in.sensitive, nodes);
      eo.ok()) {
    r.eo_signed = eo->signed_gap;
    r.eo_abs = eo->abs_gap;
  }
  return r;
}

nlohmann::json JsonValue(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string CsvValue(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : "NA";
}

struct MetricColumn {
  const char* name;
  std::optional<double> ScopeRecord::*field;
};

constexpr MetricColumn kMetrics[] = {
    {"acc", &ScopeRecord::acc},           {"auc", &ScopeRecord::auc},
    {"sp_signed", &ScopeRecord::sp_signed}, {"sp_abs", &ScopeRecord::sp_abs},
    {"eo_signed", &ScopeRecord::eo_signed}, {"eo_abs", &ScopeRecord::eo_abs},
};

std::optional<double> WorstCommunity(
    const FairnessReport& report, std::optional<double> ScopeRecord::*field) {
  std::optional<double> worst;
  for (const ScopeRecord& r : report.scopes) {
    if (r.community < 0 || !(r.*field)) continue;
    if (!worst || *(r.*field) > *worst) worst = *(r.*field);
  }
  return worst;
}

}  // namespace

absl::StatusOr<FairnessReport> CommunityReport(const AuditInputs& in,
                                               const ReportMetadata& metadata) {
  const size_t n = in.labels.size();
  if (in.pred.size() != n || in.scores.size() != n ||
      in.sensitive.size() != n || in.communities.size() != n) {
    return DataError("DimensionMismatch",
                     "predictions, scores, labels, sensitive and communities "
                     "must have one entry per node");
  }
  int32_t num_communities = 0;
  for (NodeId v : in.nodes) {
    if (v < 0 || static_cast<size_t>(v) >= n) {
      return MakeError(absl::StatusCode::kOutOfRange, "NodeIdOutOfRange",
                       absl::StrCat("audited node ", v));
    }
    if (in.pred[v] < 0) {
      return DataError("MissingPrediction", absl::StrCat("node ", v));
    }
    if (in.sensitive[v] > 1) {
      return DataError("NonBinarySensitive", absl::StrCat("node ", v));
    }
    if (!std::isfinite(in.scores[v])) {
      return DataError("NonFiniteScore", absl::StrCat("node ", v));
    }
  }
  for (int32_t c : in.communities) {
    if (c < 0) return DataError("CommunityOutOfRange", "negative community");
    num_communities = std::max(num_communities, c + 1);
  }

  FairnessReport report;
  report.metadata = metadata;
  report.metadata.num_communities = num_communities;
  report.scopes.push_back(Evaluate(in, "graph", -1, in.nodes));
  std::vector<std::vector<NodeId>> members(num_communities);
  for (NodeId v : in.nodes) members[in.communities[v]].push_back(v);
  for (int32_t k = 0; k < num_communities; ++k) {
    report.scopes.push_back(
        Evaluate(in, absl::StrCat("community_", k), k, members[k]));
  }
  return report;
}

std::vector<Paradox> DetectParadox(const FairnessReport& report,
                                   double margin) {
  std::vector<Paradox> found;
  const ScopeRecord* graph = nullptr;
  for (const ScopeRecord& r : report.scopes) {
    if (r.community < 0) graph = &r;
  }
  if (graph == nullptr) return found;
  for (const ScopeRecord& r : report.scopes) {
    if (r.community < 0) continue;
    if (r.sp_abs && graph->sp_abs && *r.sp_abs > *graph->sp_abs + margin) {
      found.push_back({r.community, "sp", *r.sp_abs, *graph->sp_abs});
    }
    if (r.eo_abs && graph->eo_abs && *r.eo_abs > *graph->eo_abs + margin) {
      found.push_back({r.community, "eo", *r.eo_abs, *graph->eo_abs});
    }
  }
  return found;
}

std::optional<double> WorstCommunityEo(const FairnessReport& report) {
  return WorstCommunity(report, &ScopeRecord::eo_abs);
}

std::optional<double> WorstCommunitySp(const FairnessReport& report) {
  return WorstCommunity(report, &ScopeRecord::sp_abs);
}

std::string ReportToJson(const FairnessReport& report,
                         const std::vector<Paradox>& paradoxes,
                         double margin) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["metadata"] = {{"model_id", report.metadata.model_id},
                   {"dataset_id", report.metadata.dataset_id},
                   {"num_communities", report.metadata.num_communities}};
  j["scopes"] = nlohmann::json::array();
  for (const ScopeRecord& r : report.scopes) {
    nlohmann::json s;
    s["scope"] = r.scope;
    s["community"] = r.community < 0 ? nlohmann::json(nullptr)
                                     : nlohmann::json(r.community);
    s["num_nodes"] = r.num_nodes;
    s["group_count"] = {r.group_count[0], r.group_count[1]};
    s["group_positives"] = {r.group_positives[0], r.group_positives[1]};
    for (const MetricColumn& m : kMetrics) s[m.name] = JsonValue(r.*m.field);
    j["scopes"].push_back(std::move(s));
  }
  j["paradox_margin"] = margin;
  j["paradoxes"] = nlohmann::json::array();
  for (const Paradox& p : paradoxes) {
    j["paradoxes"].push_back({{"community", p.community},
                              {"metric", p.metric},
                              {"community_abs", p.community_abs},
                              {"graph_abs", p.graph_abs}});
  }
  return j.dump(2) + "\n";
}

std::string ReportToCsv(const FairnessReport& report) {
  std::string out =
      "scope,num_nodes,count_s0,count_s1,positives_s0,positives_s1";
  for (const MetricColumn& m : kMetrics) absl::StrAppend(&out, ",", m.name);
  out.push_back('\n');
  for (const ScopeRecord& r : report.scopes) {
    absl::StrAppend(&out, r.scope, ",", r.num_nodes, ",", r.group_count[0], ",",
                    r.group_count[1], ",", r.group_positives[0], ",",
                    r.group_positives[1]);
    for (const MetricColumn& m : kMetrics) {
      absl::StrAppend(&out, ",", CsvValue(r.*m.field));
    }
    out.push_back('\n');
  }
  return out;
}

std::string ReportPlotDataCsv(const FairnessReport& report) {
  std::string out = "metric";
  for (const ScopeRecord& r : report.scopes) absl::StrAppend(&out, ",", r.scope);
  out.push_back('\n');
  for (const MetricColumn& m : kMetrics) {
    out += m.name;
    for (const ScopeRecord& r : report.scopes) {
      absl::StrAppend(&out, ",", CsvValue(r.*m.field));
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace comfair
