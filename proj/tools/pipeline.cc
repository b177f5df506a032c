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

#include "pipeline.h"

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "comfair/community_audit.h"
#include "comfair/graph_io.h"
#include "comfair/homophily.h"
#include "comfair/status.h"
#include "comfair/text_io.h"

namespace comfair::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

absl::Status BadConfig(absl::string_view detail) {
  return ConfigError("ConfigError", detail);
}

// Copies recognized keys of `section` into typed fields; rejects the rest.
class SectionReader {
 public:
  SectionReader(const json& document, std::string name)
      : name_(std::move(name)) {
    if (document.contains(name_)) section_ = document.at(name_);
  }

  template <typename T>
  void Read(const char* key, T* field) {
    if (!status_.ok() || section_.is_null() || !section_.contains(key)) return;
    seen_.push_back(key);
    try {
      *field = section_.at(key).get<T>();
    } catch (const json::exception& e) {
      status_ = BadConfig(absl::StrCat(name_, ".", key, ": ", e.what()));
    }
  }

  absl::Status Finish() {
    if (!status_.ok()) return status_;
    if (section_.is_null()) return absl::OkStatus();
    if (!section_.is_object()) {
      return BadConfig(absl::StrCat("section \"", name_, "\" must be an object"));
    }
    for (const auto& [key, value] : section_.items()) {
      bool known = false;
      for (const std::string& s : seen_) known |= s == key;
      if (!known) {
        return BadConfig(absl::StrCat("unknown key \"", name_, ".", key, "\""));
      }
    }
    return absl::OkStatus();
  }

 private:
  std::string name_;
  json section_;
  std::vector<std::string> seen_;
  absl::Status status_;
};

std::string SidecarPath(const std::string& path) {
  fs::path p(path);
  p.replace_extension(".json");
  return p.string();
}

absl::Status EnsureParent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (parent.empty()) return absl::OkStatus();
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) {
    return MakeError(absl::StatusCode::kPermissionDenied, "WriteFailed",
                     absl::StrCat(parent.string(), ": ", ec.message()));
  }
  return absl::OkStatus();
}

absl::Status Write(const std::string& path, absl::string_view contents) {
  COMFAIR_RETURN_IF_ERROR(EnsureParent(path));
  return WriteFile(path, contents);
}

absl::Status WriteJson(const std::string& path, const json& value) {
  return Write(path, value.dump(2) + "\n");
}

json Provenance(const PipelineConfig& config) {
  return {{"seed", config.seed}, {"config_hash", ConfigHash(config)}};
}

json OptionalJson(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

// ---------------------------------------------------------------------------
// Shared stage logic.

absl::StatusOr<Graph> ReadGraph(const PipelineConfig& config) {
  return LoadGraphBundle(config.Resolve(config.paths.graph, "graph"));
}

absl::StatusOr<std::vector<int32_t>> ReadCommunities(
    const PipelineConfig& config, int32_t n) {
  COMFAIR_ASSIGN_OR_RETURN(
      std::string csv,
      ReadFile(config.Resolve(config.paths.communities, "communities.csv")));
  return AssignmentFromCsv(csv, n);
}

absl::StatusOr<NodeSplit> ReadSplit(const PipelineConfig& config, int32_t n) {
  COMFAIR_ASSIGN_OR_RETURN(
      std::string csv, ReadFile(config.Resolve(config.paths.split, "split.csv")));
  return SplitFromCsv(csv, n);
}

struct Embedding {
  SkipgramResult skipgram;
  int64_t num_walks = 0;
};

absl::StatusOr<Embedding> Embed(const Graph& graph,
                                const PipelineConfig& config) {
  COMFAIR_ASSIGN_OR_RETURN(WalkCorpus corpus,
                           GenerateWalks(graph, config.walks, config.seed));
  Embedding out;
  out.num_walks = static_cast<int64_t>(corpus.walks.size());
  COMFAIR_ASSIGN_OR_RETURN(
      out.skipgram,
      TrainSkipgram(corpus, graph.num_nodes(), config.skipgram, config.seed));
  return out;
}

absl::StatusOr<std::vector<NodeId>> AuditNodes(const PipelineConfig& config,
                                               const Graph& graph) {
  const std::string& scope = config.audit.scope;
  if (scope == "all") {
    std::vector<NodeId> all(graph.num_nodes());
    for (NodeId i = 0; i < graph.num_nodes(); ++i) all[i] = i;
    return all;
  }
  COMFAIR_ASSIGN_OR_RETURN(NodeSplit split,
                           ReadSplit(config, graph.num_nodes()));
  if (scope == "test") return split.test;
  if (scope == "val") return split.val;
  if (scope == "train") return split.train;
  return BadConfig(absl::StrCat("unknown audit scope \"", scope, "\""));
}

absl::StatusOr<FairnessReport> Audit(const Graph& graph,
                                     const std::vector<int32_t>& communities,
                                     const Predictions& predictions,
                                     std::span<const NodeId> nodes,
                                     const ReportMetadata& metadata) {
  AuditInputs in;
  in.pred = predictions.label;
  in.scores = predictions.score;
  in.labels = graph.labels();
  in.sensitive = graph.sensitive();
  in.communities = communities;
  in.nodes = nodes;
  return CommunityReport(in, metadata);
}

json CoresetSidecar(const Coreset& coreset, const PipelineConfig& config,
                    const NodeSplit& split) {
  json cells = json::array();
  int32_t shortfall = 0;
  for (const CoresetCell& c : coreset.cells) {
    cells.push_back({{"community", c.community},
                     {"sensitive", c.sensitive},
                     {"requested", c.requested},
                     {"pool_size", c.pool_size},
                     {"selected", c.selected},
                     {"shortfall", c.shortfall}});
    shortfall += c.shortfall;
  }
  json j;
  j["K_total"] = coreset.total_budget;
  j["strategy"] = CoresetStrategyName(coreset.strategy);
  j["per_community_budget"] =
      config.coreset.per_community_budget
          ? json(*config.coreset.per_community_budget)
          : json(nullptr);
  j["community_budget"] = coreset.community_budget;
  j["size"] = coreset.entries.size();
  j["shortfall_total"] = shortfall;
  j["cells"] = std::move(cells);
  j["warnings"] = coreset.warnings;
  j["split"] = {{"train", split.train.size()},
                {"val", split.val.size()},
                {"test", split.test.size()},
                {"fractions",
                 {config.split_fractions.train, config.split_fractions.val,
                  config.split_fractions.test}},
                {"stratify", config.stratify}};
  j["provenance"] = Provenance(config);
  return j;
}

// ---------------------------------------------------------------------------
// Subcommands.

absl::StatusOr<json> RunSynth(const PipelineConfig& config) {
  if (!config.synth) return BadConfig("synth needs a \"synth\" config section");
  COMFAIR_ASSIGN_OR_RETURN(Graph graph, GenerateSbm(*config.synth, config.seed));
  const std::string dir = config.Resolve(config.paths.graph, "graph");
  COMFAIR_RETURN_IF_ERROR(SaveGraphBundle(graph, dir));
  json sidecar = {{"generator", "sbm"},
                  {"sbm", json::parse(SbmConfigToJson(*config.synth))},
                  {"provenance", Provenance(config)}};
  COMFAIR_RETURN_IF_ERROR(
      WriteJson((fs::path(dir) / "provenance.json").string(), sidecar));
  return json{{"artifacts", {{"graph", dir}}},
              {"scalars",
               {{"n", graph.num_nodes()},
                {"num_edges", graph.num_edges()},
                {"k", graph.feature_dim()}}}};
}

absl::StatusOr<json> RunEmbed(const PipelineConfig& config) {
  COMFAIR_ASSIGN_OR_RETURN(Graph graph, ReadGraph(config));
  COMFAIR_ASSIGN_OR_RETURN(Embedding embedding, Embed(graph, config));
  const std::string path =
      config.Resolve(config.paths.embeddings, "embeddings.csv");
  COMFAIR_RETURN_IF_ERROR(
      Write(path, MatrixToCsv(embedding.skipgram.embeddings)));
  json sidecar = {{"d", config.skipgram.dim},
                  {"r", config.walks.walks_per_node},
                  {"l", config.walks.walk_length},
                  {"p", config.walks.return_param},
                  {"q", config.walks.inout_param},
                  {"window", config.skipgram.window},
                  {"negatives", config.skipgram.negatives},
                  {"epochs", config.skipgram.epochs},
                  {"learning_rate", config.skipgram.learning_rate},
                  {"seed", config.seed},
                  {"num_walks", embedding.num_walks},
                  {"epoch_loss", embedding.skipgram.epoch_loss},
                  {"provenance", Provenance(config)}};
  COMFAIR_RETURN_IF_ERROR(WriteJson(SidecarPath(path), sidecar));
  return json{{"artifacts", {{"embeddings", path}}},
              {"scalars",
               {{"final_loss", embedding.skipgram.epoch_loss.back()},
                {"d", config.skipgram.dim}}}};
}

absl::StatusOr<json> RunCluster(const PipelineConfig& config) {
  COMFAIR_ASSIGN_OR_RETURN(
      std::string csv,
      ReadFile(config.Resolve(config.paths.embeddings, "embeddings.csv")));
  COMFAIR_ASSIGN_OR_RETURN(Matrix embeddings, MatrixFromCsv(csv));
  COMFAIR_ASSIGN_OR_RETURN(CommunityAssignment result,
                           KMeans(embeddings, config.kmeans, config.seed));
  const std::string path =
      config.Resolve(config.paths.communities, "communities.csv");
  COMFAIR_RETURN_IF_ERROR(Write(path, AssignmentToCsv(result.assignment)));
  std::vector<int64_t> sizes(result.num_clusters(), 0);
  for (int32_t c : result.assignment) ++sizes[c];
  json sidecar = {{"K", result.num_clusters()},
                  {"seed", config.seed},
                  {"wcss", result.wcss},
                  {"iterations", result.iterations_run},
                  {"wcss_history", result.wcss_history},
                  {"community_sizes", sizes},
                  {"provenance", Provenance(config)}};
  COMFAIR_RETURN_IF_ERROR(WriteJson(SidecarPath(path), sidecar));
  return json{{"artifacts", {{"communities", path}}},
              {"scalars",
               {{"K", result.num_clusters()},
                {"wcss", result.wcss},
                {"iterations", result.iterations_run}}}};
}

absl::StatusOr<json> RunHomophily(const PipelineConfig& config) {
  COMFAIR_ASSIGN_OR_RETURN(Graph graph, ReadGraph(config));
  const HomophilyProfile profile = ComputeHomophilyProfile(graph);
  const std::string path =
      config.Resolve(config.paths.homophily, "homophily.csv");
  COMFAIR_RETURN_IF_ERROR(Write(path, HomophilyProfileToCsv(profile)));
  double sum = 0.0;
  int64_t defined = 0;
  int64_t high = 0;
  for (const auto& r : profile.ratio) {
    if (!r) continue;
    sum += *r;
    ++defined;
    high += *r >= kHighHomophilyThreshold;
  }
  const json mean = defined > 0 ? json(sum / defined) : json(nullptr);
  json sidecar = {{"mean_ratio", mean},
                  {"defined", defined},
                  {"isolated", graph.num_nodes() - defined},
                  {"high_threshold", kHighHomophilyThreshold},
                  {"high_homophily_nodes", high},
                  {"provenance", Provenance(config)}};
  COMFAIR_RETURN_IF_ERROR(WriteJson(SidecarPath(path), sidecar));
  return json{{"artifacts", {{"homophily", path}}},
              {"scalars", {{"mean_ratio", mean}, {"isolated",
                                                  graph.num_nodes() - defined}}}};
}

absl::StatusOr<json> RunCoreset(const PipelineConfig& config) {
  COMFAIR_ASSIGN_OR_RETURN(Graph graph, ReadGraph(config));
  COMFAIR_ASSIGN_OR_RETURN(std::vector<int32_t> communities,
                           ReadCommunities(config, graph.num_nodes()));
  COMFAIR_ASSIGN_OR_RETURN(
      std::string profile_csv,
      ReadFile(config.Resolve(config.paths.homophily, "homophily.csv")));
  COMFAIR_ASSIGN_OR_RETURN(
      HomophilyProfile profile,
      HomophilyProfileFromCsv(profile_csv, graph.num_nodes()));
  COMFAIR_ASSIGN_OR_RETURN(
      NodeSplit split,
      SplitNodes(graph, config.split_fractions, config.seed, config.stratify));
  COMFAIR_ASSIGN_OR_RETURN(
      Coreset coreset,
      SelectCoreset(graph, communities, profile, split, config.coreset));

  const std::string path = config.Resolve(config.paths.coreset, "coreset.csv");
  const std::string split_path = config.Resolve(config.paths.split, "split.csv");
  COMFAIR_RETURN_IF_ERROR(Write(path, CoresetToCsv(coreset)));
  json sidecar = CoresetSidecar(coreset, config, split);
  COMFAIR_RETURN_IF_ERROR(WriteJson(SidecarPath(path), sidecar));
  COMFAIR_RETURN_IF_ERROR(Write(split_path, SplitToCsv(split)));
  return json{{"artifacts", {{"coreset", path}, {"split", split_path}}},
              {"scalars",
               {{"size", coreset.entries.size()},
                {"K_total", coreset.total_budget},
                {"shortfall_total", sidecar["shortfall_total"]}}}};
}

absl::StatusOr<json> RunTrain(const PipelineConfig& config) {
  COMFAIR_ASSIGN_OR_RETURN(Graph graph, ReadGraph(config));
  COMFAIR_ASSIGN_OR_RETURN(NodeSplit split,
                           ReadSplit(config, graph.num_nodes()));
  COMFAIR_ASSIGN_OR_RETURN(
      std::string coreset_csv,
      ReadFile(config.Resolve(config.paths.coreset, "coreset.csv")));
  COMFAIR_ASSIGN_OR_RETURN(
      std::vector<CoresetEntry> coreset,
      CoresetEntriesFromCsv(coreset_csv, graph.num_nodes()));
  TrainConfig train = config.train;
  train.seed = config.seed;
  COMFAIR_ASSIGN_OR_RETURN(TrainResult result,
                           Train(graph, split, coreset, train));
  COMFAIR_ASSIGN_OR_RETURN(Predictions predictions,
                           Predict(result.params, graph));

  const std::string model_path = config.Resolve(config.paths.model, "model.bin");
  const std::string history_path = config.Resolve("", "history.csv");
  const std::string predictions_path = config.Resolve("", "predictions.csv");
  COMFAIR_RETURN_IF_ERROR(
      Write(model_path, SerializeModel(result.params, config.seed)));
  COMFAIR_RETURN_IF_ERROR(Write(history_path, HistoryToCsv(result.history)));
  COMFAIR_RETURN_IF_ERROR(Write(predictions_path, PredictionsToCsv(predictions)));
  const EpochRecord& last = result.history.back();
  json sidecar = {{"epochs", train.epochs},
                  {"learning_rate", train.learning_rate},
                  {"lambda", train.lambda},
                  {"weight_decay", train.weight_decay},
                  {"hidden", {train.hidden1, train.hidden2}},
                  {"coreset_size", coreset.size()},
                  {"best_epoch", result.best_epoch},
                  {"best_val_acc", result.best_val_acc},
                  {"final_task_loss", last.task_loss},
                  {"final_fair_loss", last.fair_loss},
                  {"warnings", result.warnings},
                  {"provenance", Provenance(config)}};
  COMFAIR_RETURN_IF_ERROR(
      WriteJson(config.Resolve("", "train.json"), sidecar));
  return json{{"artifacts",
               {{"model", model_path},
                {"history", history_path},
                {"predictions", predictions_path}}},
              {"scalars",
               {{"best_epoch", result.best_epoch},
                {"best_val_acc", result.best_val_acc},
                {"final_total_loss", last.total_loss}}}};
}

absl::StatusOr<json> RunAudit(const PipelineConfig& config) {
  COMFAIR_ASSIGN_OR_RETURN(Graph graph, ReadGraph(config));
  COMFAIR_ASSIGN_OR_RETURN(std::vector<int32_t> communities,
                           ReadCommunities(config, graph.num_nodes()));
  COMFAIR_ASSIGN_OR_RETURN(
      std::string predictions_csv,
      ReadFile(config.Resolve(config.paths.predictions, "predictions.csv")));
  COMFAIR_ASSIGN_OR_RETURN(
      Predictions predictions,
      PredictionsFromCsv(predictions_csv, graph.num_nodes()));
  COMFAIR_ASSIGN_OR_RETURN(std::vector<NodeId> nodes, AuditNodes(config, graph));
  ReportMetadata metadata{config.audit.model_id, config.audit.dataset_id, 0};
  COMFAIR_ASSIGN_OR_RETURN(
      FairnessReport report,
      Audit(graph, communities, predictions, nodes, metadata));
  const auto paradoxes = DetectParadox(report, config.audit.margin);

  const std::string dir = config.Resolve(config.paths.report_dir, "report");
  const std::string json_path = (fs::path(dir) / "report.json").string();
  const std::string csv_path = (fs::path(dir) / "report.csv").string();
  const std::string plot_path = (fs::path(dir) / "plot_data.csv").string();
  json report_json = json::parse(ReportToJson(report, paradoxes,
                                              config.audit.margin));
  report_json["provenance"] = Provenance(config);
  report_json["scope_nodes"] = config.audit.scope;
  COMFAIR_RETURN_IF_ERROR(WriteJson(json_path, report_json));
  COMFAIR_RETURN_IF_ERROR(Write(csv_path, ReportToCsv(report)));
  COMFAIR_RETURN_IF_ERROR(Write(plot_path, ReportPlotDataCsv(report)));
  const ScopeRecord& g = report.scopes.front();
  return json{{"artifacts",
               {{"report_json", json_path},
                {"report_csv", csv_path},
                {"plot_data", plot_path}}},
              {"scalars",
               {{"acc", OptionalJson(g.acc)},
                {"auc", OptionalJson(g.auc)},
                {"sp_abs", OptionalJson(g.sp_abs)},
                {"eo_abs", OptionalJson(g.eo_abs)},
                {"worst_community_sp_abs", OptionalJson(WorstCommunitySp(report))},
                {"worst_community_eo_abs", OptionalJson(WorstCommunityEo(report))},
                {"paradoxes", paradoxes.size()}}}};
}

absl::StatusOr<json> RunSweep(const PipelineConfig& config) {
  if (config.sweep.total_budgets.empty() || config.sweep.lambdas.empty()) {
    return BadConfig("sweep needs at least one budget and one lambda");
  }
  COMFAIR_ASSIGN_OR_RETURN(Graph graph, ReadGraph(config));
  const int32_t n = graph.num_nodes();
  std::vector<int32_t> communities;
  const std::string communities_path =
      config.Resolve(config.paths.communities, "communities.csv");
  std::string community_source = communities_path;
  if (fs::exists(communities_path)) {
    COMFAIR_ASSIGN_OR_RETURN(communities, ReadCommunities(config, n));
  } else {
    COMFAIR_ASSIGN_OR_RETURN(Embedding embedding, Embed(graph, config));
    COMFAIR_ASSIGN_OR_RETURN(
        CommunityAssignment clusters,
        KMeans(embedding.skipgram.embeddings, config.kmeans, config.seed));
    communities = std::move(clusters.assignment);
    community_source = "computed";
  }
  const HomophilyProfile profile = ComputeHomophilyProfile(graph);
  COMFAIR_ASSIGN_OR_RETURN(
      NodeSplit split,
      SplitNodes(graph, config.split_fractions, config.seed, config.stratify));
  std::vector<NodeId> nodes;
  if (config.audit.scope == "all") {
    for (NodeId i = 0; i < n; ++i) nodes.push_back(i);
  } else if (config.audit.scope == "test") {
    nodes = split.test;
  } else if (config.audit.scope == "val") {
    nodes = split.val;
  } else if (config.audit.scope == "train") {
    nodes = split.train;
  } else {
    return BadConfig(absl::StrCat("unknown audit scope \"",
                                  config.audit.scope, "\""));
  }

  const std::vector<std::string> columns = {
      "total_budget", "lambda",      "coreset_size",  "shortfall_total",
      "acc",          "auc",         "sp_signed",     "sp_abs",
      "eo_signed",    "eo_abs",      "worst_community_sp_abs",
      "worst_community_eo_abs",      "paradoxes"};
  std::string csv = absl::StrJoin(columns, ",") + "\n";
  std::vector<std::string> setting_names;
  std::vector<std::vector<std::string>> metric_values(6);
  json rows = json::array();
  bool all_defined = true;
  for (int32_t budget : config.sweep.total_budgets) {
    for (double lambda : config.sweep.lambdas) {
      CoresetOptions options = config.coreset;
      options.total_budget = budget;
      options.per_community_budget.reset();
      COMFAIR_ASSIGN_OR_RETURN(
          Coreset coreset,
          SelectCoreset(graph, communities, profile, split, options));
      TrainConfig train = config.train;
      train.lambda = lambda;
      train.seed = config.seed;
      COMFAIR_ASSIGN_OR_RETURN(TrainResult trained,
                               Train(graph, split, coreset.entries, train));
      COMFAIR_ASSIGN_OR_RETURN(Predictions predictions,
                               Predict(trained.params, graph));
      const std::string name =
          absl::StrCat("K", budget, "_lambda", FormatDouble(lambda));
      ReportMetadata metadata{absl::StrCat(config.audit.model_id, "_", name),
                              config.audit.dataset_id, 0};
      COMFAIR_ASSIGN_OR_RETURN(
          FairnessReport report,
          Audit(graph, communities, predictions, nodes, metadata));
      const auto paradoxes = DetectParadox(report, config.audit.margin);
      int32_t shortfall = 0;
      for (const auto& c : coreset.cells) shortfall += c.shortfall;
      const ScopeRecord& g = report.scopes.front();
      const std::optional<double> values[] = {
          g.acc,     g.auc,    g.sp_signed, g.sp_abs, g.eo_signed, g.eo_abs,
          WorstCommunitySp(report), WorstCommunityEo(report)};
      std::string line = absl::StrCat(budget, ",", FormatDouble(lambda), ",",
                                      coreset.entries.size(), ",", shortfall);
      json row = {{"total_budget", budget},
                  {"lambda", lambda},
                  {"coreset_size", coreset.entries.size()},
                  {"shortfall_total", shortfall},
                  {"paradoxes", paradoxes.size()}};
      for (size_t m = 0; m < std::size(values); ++m) {
        absl::StrAppend(&line, ",",
                        values[m] ? FormatDouble(*values[m]) : "NA");
        row[columns[4 + m]] = OptionalJson(values[m]);
        all_defined &= values[m].has_value();
      }
      absl::StrAppend(&line, ",", paradoxes.size(), "\n");
      csv += line;
      rows.push_back(std::move(row));
      setting_names.push_back(name);
    }
  }

  // Metric x setting matrix for plotting.
  std::string plot = "metric," + absl::StrJoin(setting_names, ",") + "\n";
  for (size_t m = 4; m + 1 < columns.size(); ++m) {
    plot += columns[m];
    for (const json& row : rows) {
      const json& v = row[columns[m]];
      absl::StrAppend(&plot, ",",
                      v.is_null() ? "NA" : FormatDouble(v.get<double>()));
    }
    plot += "\n";
  }

  const std::string dir = config.Resolve(config.paths.report_dir, "sweep");
  const std::string csv_path = (fs::path(dir) / "sweep.csv").string();
  const std::string plot_path = (fs::path(dir) / "plot_data.csv").string();
  const std::string json_path = (fs::path(dir) / "sweep.json").string();
  COMFAIR_RETURN_IF_ERROR(Write(csv_path, csv));
  COMFAIR_RETURN_IF_ERROR(Write(plot_path, plot));
  COMFAIR_RETURN_IF_ERROR(WriteJson(
      json_path, {{"rows", rows},
                  {"community_source",
                   community_source == "computed" ? "computed" : "file"},
                  {"scope_nodes", config.audit.scope},
                  {"provenance", Provenance(config)}}));
  return json{{"artifacts",
               {{"sweep_csv", csv_path},
                {"plot_data", plot_path},
                {"sweep_json", json_path}}},
              {"scalars",
               {{"rows", rows.size()}, {"all_metrics_defined", all_defined}}}};
}

// ---------------------------------------------------------------------------
// Command line.

void SetPath(json& doc, std::initializer_list<const char*> keys,
             json value) {
  json* node = &doc;
  for (const char* key : keys) node = &(*node)[key];
  *node = std::move(value);
}

template <typename T>
std::vector<T> ParseList(const std::string& text) {
  std::vector<T> out;
  for (absl::string_view piece : absl::StrSplit(text, ',', absl::SkipEmpty())) {
    double value = 0.0;
    if (!ParseDouble(piece, &value)) {
      throw CLI::ValidationError("list", absl::StrCat("bad number \"",
                                                      std::string(piece), "\""));
    }
    out.push_back(static_cast<T>(value));
  }
  return out;
}

void PrintError(std::ostream& out, const absl::Status& status) {
  const int code = ExitCodeFor(status);
  const char* kind = code == kExitConfigError ? "ConfigError"
                     : code == kExitDataError ? "DataError"
                                              : "InternalError";
  json error = {{"status", "error"},
                {"kind", kind},
                {"exit_code", code},
                {"error", ErrorKind(status)},
                {"message", std::string(status.message())}};
  out << error.dump() << "\n";
}

}  // namespace

std::string PipelineConfig::Resolve(const std::string& path,
                                    const std::string& name) const {
  if (!path.empty()) return path;
  return (fs::path(out_dir) / name).string();
}

absl::StatusOr<PipelineConfig> ParseConfig(const json& document) {
  if (!document.is_object()) return BadConfig("config must be a JSON object");
  static const char* const kSections[] = {
      "seed",  "out",     "paths", "synth", "embed", "cluster",
      "split", "coreset", "train", "audit", "sweep"};
  for (const auto& [key, value] : document.items()) {
    bool known = false;
    for (const char* s : kSections) known |= key == s;
    if (!known) return BadConfig(absl::StrCat("unknown section \"", key, "\""));
  }

  PipelineConfig config;
  try {
    if (document.contains("seed")) config.seed = document["seed"].get<uint64_t>();
    if (document.contains("out")) config.out_dir = document["out"].get<std::string>();
  } catch (const json::exception& e) {
    return BadConfig(e.what());
  }
  if (document.contains("synth") && !document["synth"].is_null()) {
    COMFAIR_ASSIGN_OR_RETURN(SbmConfig sbm,
                             ParseSbmConfig(document["synth"].dump()));
    config.synth = std::move(sbm);
  }

  SectionReader paths(document, "paths");
  paths.Read("graph", &config.paths.graph);
  paths.Read("embeddings", &config.paths.embeddings);
  paths.Read("communities", &config.paths.communities);
  paths.Read("homophily", &config.paths.homophily);
  paths.Read("coreset", &config.paths.coreset);
  paths.Read("split", &config.paths.split);
  paths.Read("model", &config.paths.model);
  paths.Read("predictions", &config.paths.predictions);
  paths.Read("report_dir", &config.paths.report_dir);
  COMFAIR_RETURN_IF_ERROR(paths.Finish());

  SectionReader embed(document, "embed");
  embed.Read("walks_per_node", &config.walks.walks_per_node);
  embed.Read("walk_length", &config.walks.walk_length);
  embed.Read("p", &config.walks.return_param);
  embed.Read("q", &config.walks.inout_param);
  embed.Read("threads", &config.walks.num_threads);
  embed.Read("dim", &config.skipgram.dim);
  embed.Read("window", &config.skipgram.window);
  embed.Read("negatives", &config.skipgram.negatives);
  embed.Read("epochs", &config.skipgram.epochs);
  embed.Read("learning_rate", &config.skipgram.learning_rate);
  COMFAIR_RETURN_IF_ERROR(embed.Finish());

  SectionReader cluster(document, "cluster");
  cluster.Read("k", &config.kmeans.num_clusters);
  cluster.Read("max_iter", &config.kmeans.max_iterations);
  cluster.Read("tol", &config.kmeans.tolerance);
  COMFAIR_RETURN_IF_ERROR(cluster.Finish());

  SectionReader split(document, "split");
  split.Read("train", &config.split_fractions.train);
  split.Read("val", &config.split_fractions.val);
  split.Read("test", &config.split_fractions.test);
  split.Read("stratify", &config.stratify);
  COMFAIR_RETURN_IF_ERROR(split.Finish());

  SectionReader coreset(document, "coreset");
  std::string strategy = "extremal";
  json per_community = nullptr;
  coreset.Read("total_budget", &config.coreset.total_budget);
  coreset.Read("strategy", &strategy);
  coreset.Read("per_community_budget", &per_community);
  COMFAIR_RETURN_IF_ERROR(coreset.Finish());
  COMFAIR_ASSIGN_OR_RETURN(config.coreset.strategy,
                           ParseCoresetStrategy(strategy));
  if (per_community.is_number_integer()) {
    config.coreset.per_community_budget = per_community.get<int32_t>();
  } else if (!per_community.is_null()) {
    return BadConfig("coreset.per_community_budget must be an integer or null");
  }
  config.coreset.seed = config.seed;

  SectionReader train(document, "train");
  train.Read("epochs", &config.train.epochs);
  train.Read("lr", &config.train.learning_rate);
  train.Read("lambda", &config.train.lambda);
  train.Read("weight_decay", &config.train.weight_decay);
  train.Read("hidden1", &config.train.hidden1);
  train.Read("hidden2", &config.train.hidden2);
  train.Read("weighted", &config.train.weighted_task_loss);
  train.Read("threads", &config.train.num_threads);
  COMFAIR_RETURN_IF_ERROR(train.Finish());
  config.train.seed = config.seed;
  COMFAIR_RETURN_IF_ERROR(ValidateTrainConfig(config.train));

  SectionReader audit(document, "audit");
  audit.Read("scope", &config.audit.scope);
  audit.Read("margin", &config.audit.margin);
  audit.Read("model_id", &config.audit.model_id);
  audit.Read("dataset_id", &config.audit.dataset_id);
  COMFAIR_RETURN_IF_ERROR(audit.Finish());

  SectionReader sweep(document, "sweep");
  sweep.Read("total_budgets", &config.sweep.total_budgets);
  sweep.Read("lambdas", &config.sweep.lambdas);
  COMFAIR_RETURN_IF_ERROR(sweep.Finish());
  return config;
}

json EffectiveConfig(const PipelineConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["synth"] = c.synth ? json::parse(SbmConfigToJson(*c.synth)) : json(nullptr);
  j["embed"] = {{"walks_per_node", c.walks.walks_per_node},
                {"walk_length", c.walks.walk_length},
                {"p", c.walks.return_param},
                {"q", c.walks.inout_param},
                {"dim", c.skipgram.dim},
                {"window", c.skipgram.window},
                {"negatives", c.skipgram.negatives},
                {"epochs", c.skipgram.epochs},
                {"learning_rate", c.skipgram.learning_rate}};
  j["cluster"] = {{"k", c.kmeans.num_clusters},
                  {"max_iter", c.kmeans.max_iterations},
                  {"tol", c.kmeans.tolerance}};
  j["split"] = {{"train", c.split_fractions.train},
                {"val", c.split_fractions.val},
                {"test", c.split_fractions.test},
                {"stratify", c.stratify}};
  j["coreset"] = {{"total_budget", c.coreset.total_budget},
                  {"strategy", CoresetStrategyName(c.coreset.strategy)},
                  {"per_community_budget",
                   c.coreset.per_community_budget
                       ? json(*c.coreset.per_community_budget)
                       : json(nullptr)}};
  j["train"] = {{"epochs", c.train.epochs},
                {"lr", c.train.learning_rate},
                {"lambda", c.train.lambda},
                {"weight_decay", c.train.weight_decay},
                {"hidden1", c.train.hidden1},
                {"hidden2", c.train.hidden2},
                {"weighted", c.train.weighted_task_loss}};
  j["audit"] = {{"scope", c.audit.scope},
                {"margin", c.audit.margin},
                {"model_id", c.audit.model_id},
                {"dataset_id", c.audit.dataset_id}};
  j["sweep"] = {{"total_budgets", c.sweep.total_budgets},
                {"lambdas", c.sweep.lambdas}};
  return j;
}

std::string ConfigHash(const PipelineConfig& config) {
  return Crc32Hex(EffectiveConfig(config).dump());
}

absl::StatusOr<json> RunSubcommand(const std::string& name,
                                   const PipelineConfig& config) {
  absl::StatusOr<json> result;
  if (name == "synth") {
    result = RunSynth(config);
  } else if (name == "embed") {
    result = RunEmbed(config);
  } else if (name == "cluster") {
    result = RunCluster(config);
  } else if (name == "homophily") {
    result = RunHomophily(config);
  } else if (name == "coreset") {
    result = RunCoreset(config);
  } else if (name == "train") {
    result = RunTrain(config);
  } else if (name == "audit") {
    result = RunAudit(config);
  } else if (name == "sweep") {
    result = RunSweep(config);
  } else {
    return BadConfig(absl::StrCat("unknown subcommand \"", name, "\""));
  }
  if (!result.ok()) return result.status();
  json summary = {{"status", "ok"},
                  {"subcommand", name},
                  {"seed", config.seed},
                  {"config_hash", ConfigHash(config)}};
  summary["artifacts"] = (*result)["artifacts"];
  summary["scalars"] = (*result)["scalars"];
  return summary;
}

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
      return kExitConfigError;
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kDataLoss:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kFailedPrecondition:
      return kExitDataError;
    default:
      return kExitInternalError;
  }
}

int RunCommandLine(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Community-level fairness auditing and debiasing for GNNs",
               "comfair"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::optional<uint64_t> seed;
  std::string out_dir;
  std::string graph_path;
  json overrides = json::object();

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config document");
    sub->add_option("--seed", seed, "Global seed (overrides config)");
    sub->add_option("--out", out_dir, "Output directory (overrides config)");
    sub->add_option("--graph", graph_path, "Graph bundle directory");
  };
  // Binds a typed flag to a JSON override at `keys`.
  auto bind = [&overrides](CLI::App* sub, const std::string& flag,
                           std::initializer_list<const char*> keys,
                           const std::string& help, auto tag) {
    using T = decltype(tag);
    std::vector<const char*> path(keys);
    sub->add_option_function<T>(
        flag,
        [&overrides, path](const T& value) {
          json* node = &overrides;
          for (const char* key : path) node = &(*node)[key];
          *node = value;
        },
        help);
  };

  static const std::map<std::string, std::string> kDescriptions = {
      {"synth", "Generate a synthetic SBM graph bundle"},
      {"embed", "Learn node2vec structural embeddings"},
      {"cluster", "Partition embeddings into communities with k-means"},
      {"homophily", "Compute per-node homophily ratios"},
      {"coreset", "Split nodes and select the stratified coreset"},
      {"train", "Train the GCN with the fairness regularizer"},
      {"audit", "Write the community-level fairness report"},
      {"sweep", "Run the coreset budget and lambda ablation"}};
  std::vector<std::pair<std::string, CLI::App*>> subs;
  for (const std::string& name : SubcommandNames()) {
    CLI::App* sub = app.add_subcommand(name, kDescriptions.at(name));
    add_common(sub);
    subs.emplace_back(name, sub);
  }
  auto sub = [&subs](const std::string& name) {
    for (auto& [n, s] : subs) {
      if (n == name) return s;
    }
    return static_cast<CLI::App*>(nullptr);
  };
  for (const char* name : {"embed", "sweep"}) {
    bind(sub(name), "--walks-per-node", {"embed", "walks_per_node"},
         "Walks per start node", int32_t{});
    bind(sub(name), "--walk-length", {"embed", "walk_length"}, "Walk length",
         int32_t{});
    bind(sub(name), "--p", {"embed", "p"}, "Return parameter", double{});
    bind(sub(name), "--q", {"embed", "q"}, "In-out parameter", double{});
    bind(sub(name), "--dim", {"embed", "dim"}, "Embedding dimension",
         int32_t{});
    bind(sub(name), "--window", {"embed", "window"}, "Skip-gram window",
         int32_t{});
    bind(sub(name), "--negatives", {"embed", "negatives"},
         "Negatives per pair", int32_t{});
    bind(sub(name), "--embed-epochs", {"embed", "epochs"}, "Skip-gram epochs",
         int32_t{});
  }
  for (const char* name : {"cluster", "sweep"}) {
    bind(sub(name), "--k", {"cluster", "k"}, "Number of communities",
         int32_t{});
  }
  for (const char* name : {"coreset", "sweep"}) {
    bind(sub(name), "--strategy", {"coreset", "strategy"},
         "extremal | random", std::string{});
  }
  bind(sub("coreset"), "--total-budget", {"coreset", "total_budget"},
       "Coreset size K_total", int32_t{});
  bind(sub("coreset"), "--per-community", {"coreset", "per_community_budget"},
       "Fixed budget per community", int32_t{});
  for (const char* name : {"train", "sweep"}) {
    bind(sub(name), "--epochs", {"train", "epochs"}, "Training epochs",
         int32_t{});
    bind(sub(name), "--lr", {"train", "lr"}, "Learning rate", double{});
    bind(sub(name), "--weight-decay", {"train", "weight_decay"},
         "L2 weight decay", double{});
  }
  bind(sub("train"), "--lambda", {"train", "lambda"}, "Fairness weight",
       double{});
  for (const char* name : {"audit", "sweep"}) {
    bind(sub(name), "--margin", {"audit", "margin"}, "Paradox margin",
         double{});
    bind(sub(name), "--scope", {"audit", "scope"}, "test | val | train | all",
         std::string{});
  }
  std::string predictions_path;
  sub("audit")->add_option("--predictions", predictions_path,
                           "External predictions CSV (node_id,pred_label,score)");
  std::string budgets;
  std::string lambdas;
  sub("sweep")->add_option("--budgets", budgets, "Comma-separated K_total list");
  sub("sweep")->add_option("--lambdas", lambdas, "Comma-separated lambda list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::Success&) {
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    PrintError(out, BadConfig(e.what()));
    return kExitConfigError;
  }

  std::string name;
  for (auto& [n, s] : subs) {
    if (s->parsed()) name = n;
  }

  json document = json::object();
  if (!config_path.empty()) {
    auto text = ReadFile(config_path);
    if (!text.ok()) {
      PrintError(out, BadConfig(absl::StrCat("cannot read config ",
                                             config_path)));
      return kExitConfigError;
    }
    document = json::parse(*text, nullptr, false);
    if (document.is_discarded()) {
      PrintError(out, BadConfig(absl::StrCat(config_path, " is not valid JSON")));
      return kExitConfigError;
    }
  }
  try {
    document.merge_patch(overrides);
    if (seed) document["seed"] = *seed;
    if (!out_dir.empty()) document["out"] = out_dir;
    if (!graph_path.empty()) SetPath(document, {"paths", "graph"}, graph_path);
    if (!predictions_path.empty()) {
      SetPath(document, {"paths", "predictions"}, predictions_path);
    }
    if (!budgets.empty()) {
      document["sweep"]["total_budgets"] = ParseList<int32_t>(budgets);
    }
    if (!lambdas.empty()) document["sweep"]["lambdas"] = ParseList<double>(lambdas);
  } catch (const std::exception& e) {
    PrintError(out, BadConfig(e.what()));
    return kExitConfigError;
  }

  absl::StatusOr<PipelineConfig> config = ParseConfig(document);
  if (!config.ok()) {
    PrintError(out, config.status());
    return ExitCodeFor(config.status());
  }
  absl::StatusOr<json> summary;
  try {
    summary = RunSubcommand(name, *config);
  } catch (const std::exception& e) {
    summary = MakeError(absl::StatusCode::kInternal, "InternalError", e.what());
  }
  if (!summary.ok()) {
    PrintError(out, summary.status());
    return ExitCodeFor(summary.status());
  }
  out << summary->dump() << "\n";
  return kExitOk;
}

}  // namespace comfair::cli
