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

#ifndef COMFAIR_COMMUNITY_AUDIT_H_
#define COMFAIR_COMMUNITY_AUDIT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "comfair/types.h"

namespace comfair {

inline constexpr int kReportSchemaVersion = 1;

// Metrics for one scope. A metric whose precondition fails in the scope
// (e.g. no positives in a group for EO) is nullopt, never zero.
struct ScopeRecord {
  std::string scope;      // "graph" or "community_<k>"
  int32_t community = -1;  // -1 for the graph scope
  int32_t num_nodes = 0;
  int32_t group_count[2] = {0, 0};
  int32_t group_positives[2] = {0, 0};  // nodes with label 1 per group
  std::optional<double> acc;
  std::optional<double> auc;
  std::optional<double> sp_signed;
  std::optional<double> sp_abs;
  std::optional<double> eo_signed;
  std::optional<double> eo_abs;
};

struct ReportMetadata {
  std::string model_id;
  std::string dataset_id;
  int32_t num_communities = 0;
};

struct FairnessReport {
  ReportMetadata metadata;
  std::vector<ScopeRecord> scopes;  // scopes[0] is the graph scope
};

struct AuditInputs {
  std::span<const int32_t> pred;
  std::span<const double> scores;
  std::span<const int32_t> labels;
  std::span<const uint8_t> sensitive;
  std::span<const int32_t> communities;
  // Nodes to audit (typically the test split); every scope is restricted
  // to these.
  std::span<const NodeId> nodes;
};

// Graph-scope metrics are computed on the pooled node set. A community with
// no audited nodes gets a record with num_nodes 0 and every metric
// undefined. DimensionMismatch / MissingPrediction on malformed inputs.
absl::StatusOr<FairnessReport> CommunityReport(const AuditInputs& inputs,
                                               const ReportMetadata& metadata);

struct Paradox {
  int32_t community;
  std::string metric;  // "sp" or "eo"
  double community_abs;
  double graph_abs;
};

// Every (community, metric) whose absolute gap exceeds the graph's by more
// than `margin`. Scopes with an undefined value are skipped.
std::vector<Paradox> DetectParadox(const FairnessReport& report,
                                   double margin);

// Largest defined eo_abs / sp_abs over community scopes.
std::optional<double> WorstCommunityEo(const FairnessReport& report);
std::optional<double> WorstCommunitySp(const FairnessReport& report);

std::string ReportToJson(const FairnessReport& report,
                         const std::vector<Paradox>& paradoxes, double margin);
// One row per scope.
std::string ReportToCsv(const FairnessReport& report);
// One row per metric, one column per scope.
std::string ReportPlotDataCsv(const FairnessReport& report);

}  // namespace comfair

#endif  // COMFAIR_COMMUNITY_AUDIT_H_
