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

#ifndef COMFAIR_TOOLS_PIPELINE_H_
#define COMFAIR_TOOLS_PIPELINE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "comfair/coreset.h"
#include "comfair/kmeans.h"
#include "comfair/random_walk.h"
#include "comfair/sbm.h"
#include "comfair/skipgram.h"
#include "comfair/split.h"
#include "comfair/trainer.h"
#include "json.hpp"

namespace comfair::cli {

// Artifact locations. Empty entries resolve to fixed names under out_dir.
struct Paths {
  std::string graph;        // bundle directory
  std::string embeddings;   // CSV, sidecar alongside with .json
  std::string communities;
  std::string homophily;
  std::string coreset;
  std::string split;
  std::string model;
  std::string predictions;  // audit input; defaults to train's output
  std::string report_dir;
};

struct AuditConfig {
  // "test", "val", "train" or "all".
  std::string scope = "test";
  double margin = 0.0;
  std::string model_id = "gcn";
  std::string dataset_id = "dataset";
};

struct SweepConfig {
  std::vector<int32_t> total_budgets = {10, 20, 30, 50};
  std::vector<double> lambdas = {1.0};
};

// The merged configuration of every stage. One JSON document with
// per-stage sections; command-line flags override file values.
struct PipelineConfig {
  uint64_t seed = 0;
  std::string out_dir = "comfair_out";
  Paths paths;
  std::optional<SbmConfig> synth;
  WalkParams walks;
  SkipgramParams skipgram;
  KMeansParams kmeans;
  SplitFractions split_fractions;
  bool stratify = true;
  CoresetOptions coreset;
  TrainConfig train;
  AuditConfig audit;
  SweepConfig sweep;

  std::string Resolve(const std::string& path, const std::string& name) const;
};

absl::StatusOr<PipelineConfig> ParseConfig(const nlohmann::json& document);

// Canonical JSON of every hyperparameter (paths and output directory
// excluded), the input of ConfigHash.
nlohmann::json EffectiveConfig(const PipelineConfig& config);
std::string ConfigHash(const PipelineConfig& config);

inline const std::vector<std::string>& SubcommandNames() {
  static const std::vector<std::string>* names = new std::vector<std::string>{
      "synth", "embed", "cluster", "homophily",
      "coreset", "train", "audit", "sweep"};
  return *names;
}

// Runs one stage and returns its summary (artifact paths and key scalars).
absl::StatusOr<nlohmann::json> RunSubcommand(const std::string& name,
                                             const PipelineConfig& config);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDataError = 3;
inline constexpr int kExitInternalError = 4;

int ExitCodeFor(const absl::Status& status);

// Full command line entry point: `comfair <subcommand> [--config PATH]
// [--seed N] [--out DIR] [stage flags]`. Writes one JSON line to `out`.
int RunCommandLine(int argc, const char* const* argv, std::ostream& out,
                   std::ostream& err);

}  // namespace comfair::cli

#endif  // COMFAIR_TOOLS_PIPELINE_H_
