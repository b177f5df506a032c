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

#include "comfair/sbm.h"

#include <cmath>
#include <vector>

#include "comfair/homophily.h"
#include "comfair/status.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace comfair {
namespace {

using ::comfair::testing::TwoBlockConfig;

TEST(SbmTest, ExtremeProbabilitiesGiveDisjointTriangles) {
  SbmConfig config;
  config.block_sizes = {3, 3};
  config.p_in = 1.0;
  config.p_out = 0.0;
  auto g = GenerateSbm(config, 1);
  ASSERT_TRUE(g.ok()) << g.status();
  EXPECT_EQ(g->num_edges(), 6);
  for (NodeId u = 0; u < 3; ++u) {
    for (NodeId v = 3; v < 6; ++v) EXPECT_FALSE(g->HasEdge(u, v));
  }
}

// Mean edge count over 100 seeds against the binomial oracle.
TEST(SbmTest, EdgeCountMatchesBinomialMean) {
  SbmConfig config;
  config.block_sizes = {30, 30};
  config.p_in = 0.1;
  config.p_out = 0.1;
  const double pairs = 60.0 * 59.0 / 2.0;
  const double expected = config.p_in * pairs;
  const double sigma_of_mean =
      std::sqrt(pairs * config.p_in * (1.0 - config.p_in) / 100.0);
  double total = 0.0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    auto g = GenerateSbm(config, seed);
    ASSERT_TRUE(g.ok());
    total += static_cast<double>(g->num_edges());
  }
  EXPECT_NEAR(total / 100.0, expected, 3.0 * sigma_of_mean);
}

double MeanBlockHomophily(const Graph& g, const std::vector<int32_t>& block_of,
                          int32_t block) {
  double sum = 0.0;
  int count = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (block_of[u] != block || g.Degree(u) == 0) continue;
    int same = 0;
    for (NodeId v : g.Neighbors(u)) same += g.labels()[v] == g.labels()[u];
    sum += static_cast<double>(same) / g.Degree(u);
    ++count;
  }
  return sum / count;
}

TEST(SbmTest, LabelHomophilyTargetsSeparateBlocks) {
  SbmConfig config;
  config.block_sizes = {100, 100};
  config.p_in = 0.1;
  config.p_out = 0.01;
  config.label_homophily = {0.9, 0.3};
  for (uint64_t seed = 0; seed < 5; ++seed) {
    auto g = GenerateSbm(config, seed);
    ASSERT_TRUE(g.ok());
    const auto block_of = SbmBlockOf(config);
    EXPECT_GE(MeanBlockHomophily(*g, block_of, 0) -
                  MeanBlockHomophily(*g, block_of, 1),
              0.3);
  }
}

TEST(SbmTest, FullAlignmentFixesSensitiveBits) {
  SbmConfig config = TwoBlockConfig(50);
  config.block_sizes = {20, 30, 25};
  config.label_homophily = {0.8, 0.5, 0.2};
  config.sens_alignment = 1.0;
  auto g = GenerateSbm(config, 3);
  ASSERT_TRUE(g.ok());
  const auto block_of = SbmBlockOf(config);
  for (NodeId u = 0; u < g->num_nodes(); ++u) {
    EXPECT_EQ(g->sensitive()[u], block_of[u] % 2);
  }
}

TEST(SbmTest, AlignmentRateNearTarget) {
  SbmConfig config = TwoBlockConfig(500);
  auto g = GenerateSbm(config, 4);
  ASSERT_TRUE(g.ok());
  const auto block_of = SbmBlockOf(config);
  int aligned = 0;
  for (NodeId u = 0; u < g->num_nodes(); ++u) {
    aligned += g->sensitive()[u] == block_of[u] % 2;
  }
  const double sigma = std::sqrt(1000 * 0.9 * 0.1);
  EXPECT_NEAR(aligned, 900.0, 3.0 * sigma);
}

TEST(SbmTest, OutputPassesGraphInvariants) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    auto g = GenerateSbm(TwoBlockConfig(40), seed);
    ASSERT_TRUE(g.ok());
    for (NodeId u = 0; u < g->num_nodes(); ++u) {
      auto nbrs = g->Neighbors(u);
      for (size_t i = 0; i < nbrs.size(); ++i) {
        EXPECT_NE(nbrs[i], u);
        if (i > 0) EXPECT_LT(nbrs[i - 1], nbrs[i]);
        EXPECT_TRUE(g->HasEdge(nbrs[i], u));
      }
    }
    EXPECT_TRUE(g->features().allFinite());
    EXPECT_EQ(g->features().rows(), g->num_nodes());
  }
}

TEST(SbmTest, DeterministicForSeed) {
  auto a = GenerateSbm(TwoBlockConfig(40), 12);
  auto b = GenerateSbm(TwoBlockConfig(40), 12);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a->neighbors(), b->neighbors());
  EXPECT_EQ(a->features(), b->features());
  EXPECT_EQ(a->labels(), b->labels());
  EXPECT_EQ(a->sensitive(), b->sensitive());
}

TEST(SbmTest, FeatureSignalSeparatesClassMeans) {
  SbmConfig config = TwoBlockConfig(200);
  config.feature_signal = 2.0;
  auto g = GenerateSbm(config, 5);
  ASSERT_TRUE(g.ok());
  Eigen::RowVectorXd mean[2] = {Eigen::RowVectorXd::Zero(config.feature_dim),
                                Eigen::RowVectorXd::Zero(config.feature_dim)};
  int count[2] = {0, 0};
  for (NodeId u = 0; u < g->num_nodes(); ++u) {
    mean[g->labels()[u]] += g->features().row(u);
    ++count[g->labels()[u]];
  }
  const Eigen::RowVectorXd diff = mean[0] / count[0] - mean[1] / count[1];
  EXPECT_GT(diff.norm(), 1.0);
}

TEST(SbmTest, RejectsInvalidConfigs) {
  SbmConfig tiny;
  tiny.block_sizes = {1, 5};
  SbmConfig bad_p = TwoBlockConfig();
  bad_p.p_in = 1.5;
  SbmConfig bad_alignment = TwoBlockConfig();
  bad_alignment.sens_alignment = 0.3;
  SbmConfig bad_homophily = TwoBlockConfig();
  bad_homophily.label_homophily = {0.5};
  for (const SbmConfig& c : {tiny, bad_p, bad_alignment, bad_homophily}) {
    auto g = GenerateSbm(c, 0);
    ASSERT_FALSE(g.ok());
    EXPECT_EQ(ErrorKind(g.status()), "ConfigInvalid");
  }
}

TEST(SbmTest, JsonRoundTripAndUnknownKey) {
  SbmConfig config = TwoBlockConfig(30);
  config.label_prior = {0.3, 0.7};
  auto back = ParseSbmConfig(SbmConfigToJson(config));
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(back->block_sizes, config.block_sizes);
  EXPECT_EQ(back->label_homophily, config.label_homophily);
  EXPECT_EQ(back->label_prior, config.label_prior);
  EXPECT_EQ(back->sens_alignment, config.sens_alignment);
  auto bad = ParseSbmConfig(R"({"block_sizes": [3, 3], "p_inn": 0.2})");
  ASSERT_FALSE(bad.ok());
  EXPECT_EQ(ErrorKind(bad.status()), "ConfigInvalid");
}

}  // namespace
}  // namespace comfair
