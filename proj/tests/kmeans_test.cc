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

#include "comfair/kmeans.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "comfair/random.h"
#include "comfair/status.h"
#include "gtest/gtest.h"

namespace comfair {
namespace {

Matrix Points1d(const std::vector<double>& xs) {
  Matrix m(xs.size(), 1);
  for (size_t i = 0; i < xs.size(); ++i) m(i, 0) = xs[i];
  return m;
}

Matrix RandomPoints(int n, int d, uint64_t seed) {
  Rng rng = MakeRng(seed);
  std::normal_distribution<double> normal;
  Matrix m(n, d);
  for (int i = 0; i < n; ++i) {
    const double offset = 4.0 * (i % 3);
    for (int j = 0; j < d; ++j) m(i, j) = normal(rng) + offset;
  }
  return m;
}

KMeansParams WithK(int32_t k) {
  KMeansParams params;
  params.num_clusters = k;
  return params;
}

TEST(KMeansTest, SeparatedExampleForEverySeed) {
  const Matrix points = Points1d({0, 1, 10, 11});
  for (uint64_t seed = 0; seed < 100; ++seed) {
    auto result = KMeans(points, WithK(2), seed);
    ASSERT_TRUE(result.ok()) << result.status();
    const auto& a = result->assignment;
    EXPECT_EQ(a[0], a[1]);
    EXPECT_EQ(a[2], a[3]);
    EXPECT_NE(a[0], a[2]);
    EXPECT_EQ(result->centroids(a[0], 0), 0.5);
    EXPECT_EQ(result->centroids(a[2], 0), 10.5);
    EXPECT_EQ(result->wcss, 1.0);
  }
}

TEST(KMeansTest, SeparatedExampleInvariantToOrder) {
  const Matrix forward = Points1d({0, 1, 10, 11});
  const Matrix shuffled = Points1d({11, 0, 10, 1});
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto a = KMeans(forward, WithK(2), seed);
    auto b = KMeans(shuffled, WithK(2), seed);
    ASSERT_TRUE(a.ok() && b.ok());
    std::vector<double> ca = {a->centroids(0, 0), a->centroids(1, 0)};
    std::vector<double> cb = {b->centroids(0, 0), b->centroids(1, 0)};
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    EXPECT_EQ(ca, cb);
    EXPECT_EQ(b->assignment[0], b->assignment[2]);
    EXPECT_EQ(b->assignment[1], b->assignment[3]);
  }
}

TEST(KMeansTest, KEqualsNHasZeroWcss) {
  auto result = KMeans(RandomPoints(12, 3, 1), WithK(12), 4);
  ASSERT_TRUE(result.ok());
  EXPECT_EQ(result->wcss, 0.0);
}

TEST(KMeansTest, SingleClusterIsMean) {
  const Matrix points = RandomPoints(30, 4, 2);
  auto result = KMeans(points, WithK(1), 0);
  ASSERT_TRUE(result.ok());
  const Eigen::RowVectorXd mean = points.colwise().mean();
  EXPECT_LT((result->centroids.row(0) - mean).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(KMeansTest, WcssNonIncreasingOnRandomInputs) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 20 + static_cast<int>(seed);
    auto result = KMeans(RandomPoints(n, 1 + seed % 5, seed),
                         WithK(2 + static_cast<int32_t>(seed % 6)), seed);
    ASSERT_TRUE(result.ok());
    const auto& history = result->wcss_history;
    ASSERT_FALSE(history.empty());
    for (size_t i = 1; i < history.size(); ++i) {
      EXPECT_LE(history[i], history[i - 1]) << "seed " << seed << " it " << i;
    }
    EXPECT_GE(result->wcss, 0.0);
  }
}

TEST(KMeansTest, EveryCommunityNonEmpty) {
  // Many duplicate points stress the empty-cluster repair.
  Matrix points = Points1d({0, 0, 0, 0, 0, 0, 1, 1, 5, 9});
  for (uint64_t seed = 0; seed < 30; ++seed) {
    auto result = KMeans(points, WithK(4), seed);
    ASSERT_TRUE(result.ok());
    std::vector<int> sizes(4, 0);
    for (int32_t c : result->assignment) {
      ASSERT_GE(c, 0);
      ASSERT_LT(c, 4);
      ++sizes[c];
    }
    for (int s : sizes) EXPECT_GT(s, 0);
  }
}

TEST(KMeansTest, Deterministic) {
  const Matrix points = RandomPoints(60, 3, 9);
  auto a = KMeans(points, WithK(4), 13);
  auto b = KMeans(points, WithK(4), 13);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a->assignment, b->assignment);
  EXPECT_EQ(a->centroids, b->centroids);
}

TEST(KMeansTest, KTooLarge) {
  auto result = KMeans(Points1d({1, 2}), WithK(3), 0);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(ErrorKind(result.status()), "KTooLarge");
}

TEST(WcssTest, IdenticalPointsAreZero) {
  EXPECT_EQ(*Wcss(Points1d({3, 3, 3}), {0, 0, 0}), 0.0);
}

TEST(WcssTest, TwoPoints) {
  EXPECT_EQ(*Wcss(Points1d({0, 2}), {0, 0}), 2.0);
}

// Double-loop oracle: centroid by explicit summation, then squared
// distances coordinate by coordinate.
TEST(WcssTest, MatchesBruteForce) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix points = RandomPoints(50, 3, seed);
    Rng rng = MakeRng(seed, 1);
    std::vector<int32_t> assignment(50);
    for (int i = 0; i < 50; ++i) assignment[i] = static_cast<int32_t>(rng() % 4);
    double oracle = 0.0;
    for (int c = 0; c < 4; ++c) {
      double centroid[3] = {0, 0, 0};
      int count = 0;
      for (int i = 0; i < 50; ++i) {
        if (assignment[i] != c) continue;
        for (int j = 0; j < 3; ++j) centroid[j] += points(i, j);
        ++count;
      }
      if (count == 0) continue;
      for (double& x : centroid) x /= count;
      for (int i = 0; i < 50; ++i) {
        if (assignment[i] != c) continue;
        for (int j = 0; j < 3; ++j) {
          oracle += (points(i, j) - centroid[j]) * (points(i, j) - centroid[j]);
        }
      }
    }
    auto value = Wcss(points, assignment);
    ASSERT_TRUE(value.ok());
    EXPECT_NEAR(*value, oracle, 1e-9 * (1.0 + oracle));
  }
}

TEST(AssignmentCsvTest, RoundTrip) {
  std::vector<int32_t> assignment = {2, 0, 1, 1, 0};
  auto back = AssignmentFromCsv(AssignmentToCsv(assignment), 5);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(*back, assignment);
}

}  // namespace
}  // namespace comfair
