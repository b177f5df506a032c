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

#ifndef COMFAIR_GRAPH_IO_H_
#define COMFAIR_GRAPH_IO_H_

#include <string>

#include "absl/status/statusor.h"
#include "comfair/graph.h"

namespace comfair {

// Loads a graph from four text files:
//   edges      one "u<TAB>v" pair per line (any blank separator accepted);
//              '#' lines and blank lines are skipped
//   features   CSV, row i = node i, no header
//   labels     one integer per line, row i = node i
//   sensitive  one 0/1 integer per line, row i = node i
// The node count is the number of label rows. Errors: MalformedLine (with the
// 1-based line number), NodeIdOutOfRange, DimensionMismatch,
// NonBinarySensitive, FileNotFound.
absl::StatusOr<Graph> LoadGraph(const std::string& edges_path,
                                const std::string& features_path,
                                const std::string& labels_path,
                                const std::string& sensitive_path);

// A bundle directory holds edges.tsv, features.csv, labels.txt,
// sensitive.txt and manifest.json with n, k, num_classes and a CRC-32 per
// file. Output is byte-stable for equal graphs.
absl::Status SaveGraphBundle(const Graph& graph, const std::string& dir);

// Loads a bundle and verifies every file against its manifest checksum
// (ChecksumMismatch on failure).
absl::StatusOr<Graph> LoadGraphBundle(const std::string& dir);

}  // namespace comfair

#endif  // COMFAIR_GRAPH_IO_H_
