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

#include "comfair/skipgram.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "comfair/random.h"
#include "comfair/random_walk.h"
#include "comfair/status.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace comfair {
namespace {

using ::comfair::testing::MakeGraph;

Graph TwoCliques() {
  std::vector<Edge> edges;
  for (int c = 0; c < 2; ++c) {
    for (NodeId i = 0; i < 10; ++i) {
      for (NodeId j = i + 1; j < 10; ++j) edges.push_back({c * 10 + i, c * 10 + j});
    }
  }
  return MakeGraph(20, edges);
}

WalkCorpus Walks(const Graph& g, uint64_t seed) {
  WalkParams params;
  params.walks_per_node = 10;
  params.walk_length = 20;
  auto corpus = GenerateWalks(g, params, seed);
  EXPECT_TRUE(corpus.ok());
  return *std::move(corpus);
}

double Cosine(const Matrix& m, int a, int b) {
  return m.row(a).dot(m.row(b)) / (m.row(a).norm() * m.row(b).norm());
}

TEST(SkipgramTest, ShapeAndFinite) {
  Graph g = testing::RandomGraph(30, 0.15, 1);
  SkipgramParams params;
  params.dim = 12;
  params.epochs = 2;
  auto result = TrainSkipgram(Walks(g, 1), 30, params, 1);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(result->embeddings.rows(), 30);
  EXPECT_EQ(result->embeddings.cols(), 12);
  EXPECT_TRUE(result->embeddings.allFinite());
  EXPECT_EQ(result->epoch_loss.size(), 2u);
}

TEST(SkipgramTest, TwoCliquesSeparate) {
  Graph g = TwoCliques();
  SkipgramParams params;
  params.dim = 16;
  for (uint64_t seed = 0; seed < 3; ++seed) {
    auto result = TrainSkipgram(Walks(g, seed), 20, params, seed);
    ASSERT_TRUE(result.ok());
    double intra = 0.0, inter = 0.0;
    int n_intra = 0, n_inter = 0;
    for (int a = 0; a < 20; ++a) {
      for (int b = a + 1; b < 20; ++b) {
        if (a / 10 == b / 10) {
          intra += Cosine(result->embeddings, a, b);
          ++n_intra;
        } else {
          inter += Cosine(result->embeddings, a, b);
          ++n_inter;
        }
      }
    }
    EXPECT_GT(intra / n_intra, inter / n_inter);
  }
}

TEST(SkipgramTest, LossDecreasesByEpochThree) {
  Graph g = TwoCliques();
  SkipgramParams params;
  params.dim = 16;
  auto result = TrainSkipgram(Walks(g, 5), 20, params, 5);
  ASSERT_TRUE(result.ok());
  EXPECT_LT(result->epoch_loss[2], result->epoch_loss[0]);
}

TEST(SkipgramTest, Deterministic) {
  Graph g = TwoCliques();
  SkipgramParams params;
  params.dim = 8;
  params.epochs = 2;
  WalkCorpus corpus = Walks(g, 3);
  auto a = TrainSkipgram(corpus, 20, params, 3);
  auto b = TrainSkipgram(corpus, 20, params, 3);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a->embeddings, b->embeddings);
}

TEST(SkipgramTest, EmptyCorpusRejected) {
  auto result = TrainSkipgram(WalkCorpus{}, 5, SkipgramParams{}, 0);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(ErrorKind(result.status()), "EmptyCorpus");
}

TEST(SkipgramTest, InvalidParamsRejected) {
  Graph g = TwoCliques();
  SkipgramParams params;
  params.window = 0;
  auto result = TrainSkipgram(Walks(g, 0), 20, params, 0);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(ErrorKind(result.status()), "ConfigInvalid");
}

TEST(NoiseDistributionTest, SumsToOneAndFollowsThreeQuarterPower) {
  WalkCorpus corpus;
  corpus.walks = {{0, 1, 0, 1, 0}, {2, 0}, {3}};
  const std::vector<double> noise = NoiseDistribution(corpus, 5);
  EXPECT_NEAR(std::accumulate(noise.begin(), noise.end(), 0.0), 1.0, 1e-12);
  // Frequencies 4, 2, 1, 1, 0.
  const double z = std::pow(4.0, 0.75) + std::pow(2.0, 0.75) + 2.0;
  EXPECT_NEAR(noise[0], std::pow(4.0, 0.75) / z, 1e-15);
  EXPECT_NEAR(noise[1], std::pow(2.0, 0.75) / z, 1e-15);
  EXPECT_NEAR(noise[3], 1.0 / z, 1e-15);
  EXPECT_EQ(noise[4], 0.0);
}

TEST(NegativeSamplerTest, NeverReturnsExcludedNode) {
  NegativeSampler sampler({0.7, 0.1, 0.2});
  Rng rng = MakeRng(1);
  for (int i = 0; i < 5000; ++i) {
    auto draw = sampler.Sample(0, rng);
    ASSERT_TRUE(draw.has_value());
    EXPECT_NE(*draw, 0);
  }
}

TEST(NegativeSamplerTest, OnlyExcludedNodeHasMass) {
  NegativeSampler sampler({0.0, 1.0, 0.0});
  Rng rng = MakeRng(1);
  EXPECT_FALSE(sampler.Sample(1, rng).has_value());
}

}  // namespace
}  // namespace comfair
