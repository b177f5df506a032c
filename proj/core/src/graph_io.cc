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

#include "comfair/graph_io.h"

#include <filesystem>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "comfair/status.h"
#include "comfair/text_io.h"
#include "json.hpp"

namespace comfair {
namespace {

namespace fs = std::filesystem;

constexpr char kEdgesFile[] = "edges.tsv";
constexpr char kFeaturesFile[] = "features.csv";
constexpr char kLabelsFile[] = "labels.txt";
constexpr char kSensitiveFile[] = "sensitive.txt";
constexpr char kManifestFile[] = "manifest.json";

absl::Status Malformed(const std::string& what, size_t line_no,
                       absl::string_view detail) {
  return DataError("MalformedLine",
                   absl::StrCat(what, " line ", line_no, ": ", detail));
}

bool IsSkippable(absl::string_view line) {
  line = absl::StripAsciiWhitespace(line);
  return line.empty() || line.front() == '#';
}

absl::StatusOr<std::vector<int64_t>> ParseIntColumn(
    const std::string& what, absl::string_view contents) {
  std::vector<int64_t> values;
  size_t line_no = 0;
  for (absl::string_view line : SplitLines(contents)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    int64_t value = 0;
    if (!ParseInt64(absl::StripAsciiWhitespace(line), &value)) {
      return Malformed(what, line_no, "expected one integer");
    }
    values.push_back(value);
  }
  return values;
}

absl::StatusOr<std::vector<Edge>> ParseEdges(absl::string_view contents,
                                             int64_t num_nodes) {
  std::vector<Edge> edges;
  size_t line_no = 0;
  for (absl::string_view line : SplitLines(contents)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    std::vector<absl::string_view> fields =
        absl::StrSplit(line, absl::ByAnyChar(" \t"), absl::SkipEmpty());
    int64_t u = 0;
    int64_t v = 0;
    if (fields.size() != 2 || !ParseInt64(fields[0], &u) ||
        !ParseInt64(fields[1], &v)) {
      return Malformed("edges", line_no, "expected \"u<TAB>v\"");
    }
    if (u < 0 || v < 0 || u >= num_nodes || v >= num_nodes) {
      return MakeError(absl::StatusCode::kOutOfRange, "NodeIdOutOfRange",
                       absl::StrCat("edges line ", line_no, ": (", u, ", ", v,
                                    ") outside [0, ", num_nodes, ")"));
    }
    if (u == v) return Malformed("edges", line_no, "self-loop");
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  return edges;
}

absl::StatusOr<Matrix> ParseFeatures(absl::string_view contents) {
  std::vector<double> values;
  int64_t cols = -1;
  int64_t rows = 0;
  size_t line_no = 0;
  for (absl::string_view line : SplitLines(contents)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    if (cols < 0) cols = static_cast<int64_t>(fields.size());
    if (static_cast<int64_t>(fields.size()) != cols) {
      return Malformed("features", line_no,
                       absl::StrCat("expected ", cols, " columns, got ",
                                    fields.size()));
    }
    for (absl::string_view field : fields) {
      double value = 0.0;
      if (!ParseDouble(field, &value)) {
        return Malformed("features", line_no, "unparsable number");
      }
      values.push_back(value);
    }
    ++rows;
  }
  if (cols < 0) cols = 0;
  Matrix features(rows, cols);
  for (int64_t i = 0; i < rows * cols; ++i) features.data()[i] = values[i];
  return features;
}

absl::StatusOr<Graph> ParseGraph(absl::string_view edges_text,
                                 absl::string_view features_text,
                                 absl::string_view labels_text,
                                 absl::string_view sensitive_text,
                                 int32_t num_classes) {
  COMFAIR_ASSIGN_OR_RETURN(std::vector<int64_t> labels64,
                           ParseIntColumn("labels", labels_text));
  COMFAIR_ASSIGN_OR_RETURN(std::vector<int64_t> sensitive64,
                           ParseIntColumn("sensitive", sensitive_text));
  const int64_t n = static_cast<int64_t>(labels64.size());
  if (n == 0) return DataError("DimensionMismatch", "labels file is empty");
  if (static_cast<int64_t>(sensitive64.size()) != n) {
    return DataError("DimensionMismatch",
                     absl::StrCat("sensitive rows ", sensitive64.size(),
                                  " != label rows ", n));
  }
  std::vector<uint8_t> sensitive(n);
  for (int64_t i = 0; i < n; ++i) {
    if (sensitive64[i] != 0 && sensitive64[i] != 1) {
      return DataError("NonBinarySensitive",
                       absl::StrCat("node ", i, " has value ", sensitive64[i]));
    }
    sensitive[i] = static_cast<uint8_t>(sensitive64[i]);
  }
  std::vector<int32_t> labels(labels64.begin(), labels64.end());
  COMFAIR_ASSIGN_OR_RETURN(Matrix features, ParseFeatures(features_text));
  if (features.rows() != n) {
    return DataError("DimensionMismatch",
                     absl::StrCat("feature rows ", features.rows(),
                                  " != node count ", n));
  }
  COMFAIR_ASSIGN_OR_RETURN(std::vector<Edge> edges, ParseEdges(edges_text, n));
  return Graph::Create(static_cast<int32_t>(n), edges, std::move(features),
                       std::move(labels), std::move(sensitive), num_classes);
}

std::string EdgesText(const Graph& graph) {
  std::string out;
  for (const Edge& e : graph.EdgeList()) {
    absl::StrAppend(&out, e.u, "\t", e.v, "\n");
  }
  return out;
}

std::string FeaturesText(const Graph& graph) {
  std::string out;
  const Matrix& x = graph.features();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (j > 0) out.push_back(',');
      out += FormatDouble(x(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

template <typename T>
std::string ColumnText(const std::vector<T>& values) {
  std::string out;
  for (const T& v : values) absl::StrAppend(&out, static_cast<int64_t>(v), "\n");
  return out;
}

}  // namespace

absl::StatusOr<Graph> LoadGraph(const std::string& edges_path,
                                const std::string& features_path,
                                const std::string& labels_path,
                                const std::string& sensitive_path) {
  COMFAIR_ASSIGN_OR_RETURN(std::string edges, ReadFile(edges_path));
  COMFAIR_ASSIGN_OR_RETURN(std::string features, ReadFile(features_path));
  COMFAIR_ASSIGN_OR_RETURN(std::string labels, ReadFile(labels_path));
  COMFAIR_ASSIGN_OR_RETURN(std::string sensitive, ReadFile(sensitive_path));
  return ParseGraph(edges, features, labels, sensitive, /*num_classes=*/0);
}

absl::Status SaveGraphBundle(const Graph& graph, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return MakeError(absl::StatusCode::kPermissionDenied, "WriteFailed",
                     absl::StrCat(dir, ": ", ec.message()));
  }
  const std::vector<std::pair<std::string, std::string>> files = {
      {kEdgesFile, EdgesText(graph)},
      {kFeaturesFile, FeaturesText(graph)},
      {kLabelsFile, ColumnText(graph.labels())},
      {kSensitiveFile, ColumnText(graph.sensitive())},
  };
  nlohmann::json manifest;
  manifest["format"] = "comfair-graph-bundle";
  manifest["version"] = 1;
  manifest["n"] = graph.num_nodes();
  manifest["k"] = graph.feature_dim();
  manifest["num_classes"] = graph.num_classes();
  manifest["num_edges"] = graph.num_edges();
  for (const auto& [name, contents] : files) {
    manifest["checksums"][name] = Crc32Hex(contents);
    COMFAIR_RETURN_IF_ERROR(WriteFile((fs::path(dir) / name).string(),
                                      contents));
  }
  return WriteFile((fs::path(dir) / kManifestFile).string(),
                   manifest.dump(2) + "\n");
}

absl::StatusOr<Graph> LoadGraphBundle(const std::string& dir) {
  COMFAIR_ASSIGN_OR_RETURN(
      std::string manifest_text,
      ReadFile((fs::path(dir) / kManifestFile).string()));
  nlohmann::json manifest =
      nlohmann::json::parse(manifest_text, nullptr, /*allow_exceptions=*/false);
  if (manifest.is_discarded() || !manifest.is_object() ||
      !manifest.contains("checksums") || !manifest.contains("n")) {
    return DataError("MalformedManifest", dir);
  }
  std::vector<std::string> contents;
  for (const char* name :
       {kEdgesFile, kFeaturesFile, kLabelsFile, kSensitiveFile}) {
    COMFAIR_ASSIGN_OR_RETURN(std::string text,
                             ReadFile((fs::path(dir) / name).string()));
    const auto& sums = manifest["checksums"];
    if (!sums.contains(name) || !sums[name].is_string() ||
        sums[name].get<std::string>() != Crc32Hex(text)) {
      return DataError("ChecksumMismatch", absl::StrCat(dir, "/", name));
    }
    contents.push_back(std::move(text));
  }
  const int32_t num_classes = manifest.value("num_classes", 0);
  COMFAIR_ASSIGN_OR_RETURN(
      Graph graph, ParseGraph(contents[0], contents[1], contents[2],
                              contents[3], num_classes));
  if (graph.num_nodes() != manifest["n"].get<int64_t>() ||
      graph.feature_dim() != manifest.value("k", graph.feature_dim())) {
    return DataError("DimensionMismatch", "manifest disagrees with files");
  }
  return graph;
}

}  // namespace comfair
