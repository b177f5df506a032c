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

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "comfair/kmeans.h"
#include "comfair/sbm.h"
#include "comfair/text_io.h"
#include "comfair/trainer.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "pipeline.h"
#include "test_util.h"

namespace comfair::cli {
namespace {

using ::comfair::testing::TempDir;
using nlohmann::json;

struct Outcome {
  int code;
  json summary;
};

Outcome Invoke(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"comfair"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCommandLine(static_cast<int>(argv.size()), argv.data(),
                                  out, err);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1) << text;
  json summary = json::parse(text, nullptr, false);
  EXPECT_FALSE(summary.is_discarded()) << text;
  return {code, summary};
}

constexpr char kConfig[] = R"({
  "seed": 5,
  "synth": {"block_sizes": [40, 40], "p_in": 0.15, "p_out": 0.02,
            "sens_alignment": 0.9, "label_homophily": [0.85, 0.35],
            "feature_signal": 2.0},
  "embed": {"dim": 8, "walks_per_node": 4, "walk_length": 10, "epochs": 1},
  "cluster": {"k": 3},
  "coreset": {"total_budget": 12},
  "train": {"epochs": 30, "lr": 0.1, "hidden1": 8, "hidden2": 8}
})";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    config_ = dir_.File("config.json");
    ASSERT_TRUE(WriteFile(config_, kConfig).ok());
  }

  std::vector<std::string> Args(const std::string& subcommand,
                                const std::string& out,
                                std::vector<std::string> extra = {}) {
    std::vector<std::string> args = {subcommand, "--config", config_, "--out",
                                     out};
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
  }

  void RunPipeline(const std::string& out) {
    for (const char* stage : {"synth", "embed", "cluster", "homophily",
                              "coreset", "train", "audit"}) {
      Outcome o = Invoke(Args(stage, out));
      ASSERT_EQ(o.code, kExitOk) << stage << ": " << o.summary.dump();
      EXPECT_EQ(o.summary["status"], "ok");
      EXPECT_EQ(o.summary["subcommand"], stage);
    }
  }

  TempDir dir_;
  std::string config_;
};

TEST_F(CliTest, FullPipelineIsByteReproducible) {
  const std::string a = dir_.File("run_a");
  const std::string b = dir_.File("run_b");
  RunPipeline(a);
  RunPipeline(b);
  for (const char* file : {"report/report.json", "report/report.csv",
                           "report/plot_data.csv", "predictions.csv",
                           "model.bin", "communities.csv", "coreset.csv"}) {
    auto x = ReadFile(a + "/" + file);
    auto y = ReadFile(b + "/" + file);
    ASSERT_TRUE(x.ok() && y.ok()) << file;
    EXPECT_EQ(*x, *y) << file;
  }
}

TEST_F(CliTest, SidecarsCarryProvenance) {
  const std::string out = dir_.File("run");
  RunPipeline(out);
  Outcome o = Invoke(Args("audit", out));
  const std::string hash = o.summary["config_hash"];
  for (const char* sidecar : {"embeddings.json", "communities.json",
                              "homophily.json", "coreset.json", "train.json",
                              "graph/provenance.json", "report/report.json"}) {
    auto text = ReadFile(out + "/" + sidecar);
    ASSERT_TRUE(text.ok()) << sidecar;
    json j = json::parse(*text);
    EXPECT_EQ(j["provenance"]["seed"], 5) << sidecar;
    EXPECT_EQ(j["provenance"]["config_hash"], hash) << sidecar;
  }
  json embed = json::parse(*ReadFile(out + "/embeddings.json"));
  EXPECT_EQ(embed["d"], 8);
  EXPECT_EQ(embed["r"], 4);
  EXPECT_EQ(embed["l"], 10);
  json clusters = json::parse(*ReadFile(out + "/communities.json"));
  EXPECT_EQ(clusters["K"], 3);
  json coreset = json::parse(*ReadFile(out + "/coreset.json"));
  EXPECT_EQ(coreset["K_total"], 12);
  EXPECT_EQ(coreset["strategy"], "extremal");
}

TEST_F(CliTest, AuditOfGroundTruthIsPerfect) {
  const std::string out = dir_.File("run");
  ASSERT_EQ(Invoke(Args("synth", out)).code, kExitOk);
  auto config = ParseSbmConfig(json::parse(kConfig)["synth"].dump());
  ASSERT_TRUE(config.ok());
  auto graph = GenerateSbm(*config, 5);
  ASSERT_TRUE(graph.ok());
  Predictions truth;
  for (int32_t y : graph->labels()) {
    truth.label.push_back(y);
    truth.score.push_back(y);
  }
  const std::string predictions = dir_.File("truth.csv");
  ASSERT_TRUE(WriteFile(predictions, PredictionsToCsv(truth)).ok());
  ASSERT_TRUE(WriteFile(out + "/communities.csv",
                        AssignmentToCsv(SbmBlockOf(*config)))
                  .ok());
  Outcome o = Invoke(Args("audit", out,
                       {"--predictions", predictions, "--scope", "all"}));
  ASSERT_EQ(o.code, kExitOk) << o.summary.dump();
  EXPECT_EQ(o.summary["scalars"]["acc"], 1.0);
  EXPECT_EQ(o.summary["scalars"]["auc"], 1.0);
  EXPECT_TRUE(o.summary["scalars"]["sp_abs"].is_number());
  EXPECT_TRUE(o.summary["scalars"]["eo_abs"].is_number());
  EXPECT_EQ(o.summary["scalars"]["eo_abs"], 0.0);
}

TEST_F(CliTest, SweepEmitsOneRowPerBudget) {
  const std::string out = dir_.File("run");
  ASSERT_EQ(Invoke(Args("synth", out)).code, kExitOk);
  Outcome o = Invoke(Args("sweep", out, {"--budgets", "10,20,30,50"}));
  ASSERT_EQ(o.code, kExitOk) << o.summary.dump();
  EXPECT_EQ(o.summary["scalars"]["rows"], 4);
  auto csv = ReadFile(out + "/sweep/sweep.csv");
  ASSERT_TRUE(csv.ok());
  EXPECT_EQ(std::count(csv->begin(), csv->end(), '\n'), 5);
  auto plot = ReadFile(out + "/sweep/plot_data.csv");
  ASSERT_TRUE(plot.ok());
  EXPECT_EQ(plot->substr(0, plot->find('\n')),
            "metric,K10_lambda1,K20_lambda1,K30_lambda1,K50_lambda1");
}

TEST_F(CliTest, SubcommandsDoNotMutateInputs) {
  const std::string out = dir_.File("run");
  RunPipeline(out);
  std::vector<std::string> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(out)) {
    if (entry.is_regular_file()) files.push_back(entry.path().string());
  }
  std::vector<std::string> before;
  for (const auto& f : files) before.push_back(Crc32Hex(*ReadFile(f)));
  // Re-running audit only rewrites its own outputs, identically.
  ASSERT_EQ(Invoke(Args("audit", out)).code, kExitOk);
  for (size_t i = 0; i < files.size(); ++i) {
    EXPECT_EQ(Crc32Hex(*ReadFile(files[i])), before[i]) << files[i];
  }
}

TEST_F(CliTest, FlagsOverrideConfig) {
  const std::string out = dir_.File("run");
  ASSERT_EQ(Invoke(Args("synth", out)).code, kExitOk);
  ASSERT_EQ(Invoke(Args("embed", out)).code, kExitOk);
  Outcome o = Invoke(Args("cluster", out, {"--k", "4", "--seed", "9"}));
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_EQ(o.summary["scalars"]["K"], 4);
  EXPECT_EQ(o.summary["seed"], 9);
  Outcome base = Invoke(Args("cluster", out));
  EXPECT_NE(base.summary["config_hash"], o.summary["config_hash"]);
}

TEST_F(CliTest, MissingConfigFileIsConfigError) {
  Outcome o = Invoke({"train", "--config", dir_.File("absent.json")});
  EXPECT_EQ(o.code, kExitConfigError);
  EXPECT_EQ(o.summary["status"], "error");
  EXPECT_EQ(o.summary["kind"], "ConfigError");
}

TEST_F(CliTest, UnknownConfigKeyIsConfigError) {
  const std::string bad = dir_.File("bad.json");
  ASSERT_TRUE(WriteFile(bad, R"({"train": {"epoch": 3}})").ok());
  Outcome o = Invoke({"train", "--config", bad});
  EXPECT_EQ(o.code, kExitConfigError);
  EXPECT_NE(o.summary["message"].get<std::string>().find("train.epoch"),
            std::string::npos);
}

TEST_F(CliTest, UnknownFlagIsConfigError) {
  Outcome o = Invoke({"train", "--bogus", "1"});
  EXPECT_EQ(o.code, kExitConfigError);
}

TEST_F(CliTest, MissingGraphIsDataError) {
  Outcome o = Invoke(Args("embed", dir_.File("empty")));
  EXPECT_EQ(o.code, kExitDataError);
  EXPECT_EQ(o.summary["kind"], "DataError");
  EXPECT_EQ(o.summary["error"], "FileNotFound");
}

TEST_F(CliTest, MalformedPredictionsAreDataError) {
  const std::string out = dir_.File("run");
  RunPipeline(out);
  const std::string bad = dir_.File("bad.csv");
  ASSERT_TRUE(WriteFile(bad, "node_id,pred_label,score\n0,1,high\n").ok());
  Outcome o = Invoke(Args("audit", out, {"--predictions", bad}));
  EXPECT_EQ(o.code, kExitDataError) << o.summary.dump();
}

TEST(ExitCodeTest, Mapping) {
  EXPECT_EQ(ExitCodeFor(absl::OkStatus()), kExitOk);
  EXPECT_EQ(ExitCodeFor(absl::InvalidArgumentError("x")), kExitConfigError);
  EXPECT_EQ(ExitCodeFor(absl::NotFoundError("x")), kExitDataError);
  EXPECT_EQ(ExitCodeFor(absl::DataLossError("x")), kExitDataError);
  EXPECT_EQ(ExitCodeFor(absl::InternalError("x")), kExitInternalError);
}

TEST(ConfigTest, HashIgnoresPathsButTracksHyperparameters) {
  auto a = ParseConfig(json::parse(R"({"out": "x", "train": {"lambda": 1}})"));
  auto b = ParseConfig(json::parse(R"({"out": "y", "train": {"lambda": 1}})"));
  auto c = ParseConfig(json::parse(R"({"out": "x", "train": {"lambda": 0}})"));
  ASSERT_TRUE(a.ok() && b.ok() && c.ok());
  EXPECT_EQ(ConfigHash(*a), ConfigHash(*b));
  EXPECT_NE(ConfigHash(*a), ConfigHash(*c));
}

TEST(ConfigTest, Defaults) {
  auto config = ParseConfig(json::object());
  ASSERT_TRUE(config.ok());
  EXPECT_EQ(config->coreset.total_budget, 30);
  EXPECT_EQ(config->kmeans.num_clusters, 5);
  EXPECT_EQ(config->train.epochs, 400);
  EXPECT_EQ(config->train.learning_rate, 0.01);
  EXPECT_EQ(config->split_fractions.train, 0.5);
  EXPECT_EQ(config->walks.walks_per_node, 10);
  EXPECT_EQ(config->skipgram.dim, 64);
}

}  // namespace
}  // namespace comfair::cli
