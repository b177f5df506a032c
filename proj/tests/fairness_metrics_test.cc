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

#include "comfair/fairness_metrics.h"

#include <vector>

#include "comfair/random.h"
#include "comfair/status.h"
#include "gtest/gtest.h"

namespace comfair {
namespace {

std::vector<NodeId> Range(int n) {
  std::vector<NodeId> out(n);
  for (int i = 0; i < n; ++i) out[i] = i;
  return out;
}

TEST(AccuracyTest, Examples) {
  const std::vector<int32_t> labels = {0, 1, 0, 1};
  const auto all = Range(4);
  EXPECT_EQ(*Accuracy(labels, labels, all), 1.0);
  EXPECT_EQ(*Accuracy(std::vector<int32_t>{0, 1, 1, 1}, labels, all), 0.75);
  EXPECT_EQ(*Accuracy(std::vector<int32_t>{1, 0, 1, 0}, labels, all), 0.0);
}

TEST(AccuracyTest, EmptyScope) {
  auto acc = Accuracy(std::vector<int32_t>{1}, std::vector<int32_t>{1}, {});
  ASSERT_FALSE(acc.ok());
  EXPECT_EQ(ErrorKind(acc.status()), "EmptyScope");
}

TEST(AucTest, Examples) {
  const std::vector<int32_t> labels = {1, 1, 0, 0};
  const auto all = Range(4);
  EXPECT_EQ(*Auc(std::vector<double>{0.9, 0.8, 0.3, 0.1}, labels, all), 1.0);
  EXPECT_EQ(*Auc(std::vector<double>{0.1, 0.3, 0.8, 0.9}, labels, all), 0.0);
  EXPECT_EQ(*Auc(std::vector<double>{0.9, 0.8, 0.3, 0.1},
                 std::vector<int32_t>{1, 0, 1, 0}, all),
            0.75);
  EXPECT_EQ(*Auc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, labels, all), 0.5);
}

TEST(AucTest, SingleClassScope) {
  auto auc = Auc(std::vector<double>{0.2, 0.4}, std::vector<int32_t>{1, 1},
                 Range(2));
  ASSERT_FALSE(auc.ok());
  EXPECT_EQ(ErrorKind(auc.status()), "SingleClassScope");
}

TEST(StatisticalParityTest, Examples) {
  // Group 0: nodes 0-3 with rate 0.5; group 1: nodes 4-7 with rate 0.25.
  const std::vector<uint8_t> s = {0, 0, 0, 0, 1, 1, 1, 1};
  auto gap = StatisticalParity(std::vector<int32_t>{1, 1, 0, 0, 1, 0, 0, 0}, s,
                               Range(8));
  ASSERT_TRUE(gap.ok());
  EXPECT_EQ(gap->signed_gap, 0.25);
  EXPECT_EQ(gap->abs_gap, 0.25);
  gap = StatisticalParity(std::vector<int32_t>{1, 0, 0, 0, 1, 0, 0, 0}, s,
                          Range(8));
  EXPECT_EQ(gap->signed_gap, 0.0);
  gap = StatisticalParity(std::vector<int32_t>{0, 0, 0, 0, 1, 1, 1, 1}, s,
                          Range(8));
  EXPECT_EQ(gap->signed_gap, -1.0);
  EXPECT_EQ(gap->abs_gap, 1.0);
}

TEST(StatisticalParityTest, MissingGroup) {
  auto gap = StatisticalParity(std::vector<int32_t>{1, 0},
                               std::vector<uint8_t>{1, 1}, Range(2));
  ASSERT_FALSE(gap.ok());
  EXPECT_EQ(ErrorKind(gap.status()), "MissingGroup");
}

TEST(EqualOpportunityTest, Examples) {
  const std::vector<int32_t> labels = {1, 1, 0, 1, 1, 0};
  const std::vector<uint8_t> s = {0, 0, 0, 1, 1, 1};
  auto gap = EqualOpportunity(std::vector<int32_t>{1, 1, 0, 1, 0, 1}, labels,
                              s, Range(6));
  ASSERT_TRUE(gap.ok());
  EXPECT_EQ(gap->signed_gap, 0.5);
  EXPECT_EQ(gap->abs_gap, 0.5);
  gap = EqualOpportunity(std::vector<int32_t>{1, 0, 1, 0, 1, 1}, labels, s,
                         Range(6));
  EXPECT_EQ(gap->signed_gap, 0.0);
}

TEST(EqualOpportunityTest, MissingPositives) {
  auto gap = EqualOpportunity(std::vector<int32_t>{1, 1},
                              std::vector<int32_t>{1, 0},
                              std::vector<uint8_t>{0, 1}, Range(2));
  ASSERT_FALSE(gap.ok());
  EXPECT_EQ(ErrorKind(gap.status()), "MissingPositives");
}

struct Sample {
  std::vector<int32_t> pred, labels;
  std::vector<uint8_t> sensitive;
  std::vector<double> scores;
  std::vector<NodeId> nodes;
};

Sample RandomSample(Rng& rng) {
  Sample s;
  const int n = 2 + static_cast<int>(rng() % 199);
  for (int i = 0; i < n; ++i) {
    s.pred.push_back(static_cast<int32_t>(rng() % 2));
    s.labels.push_back(static_cast<int32_t>(rng() % 2));
    s.sensitive.push_back(static_cast<uint8_t>(rng() % 2));
    // Coarse grid so ties occur.
    s.scores.push_back(static_cast<double>(rng() % 20) / 19.0);
    if (rng() % 4 != 0) s.nodes.push_back(i);
  }
  return s;
}

TEST(MetricOracleTest, MatchesCountingOracles) {
  Rng rng = MakeRng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const Sample s = RandomSample(rng);
    int64_t correct = 0, count[2] = {0, 0}, pos_pred[2] = {0, 0};
    int64_t positives[2] = {0, 0}, tp[2] = {0, 0};
    for (NodeId v : s.nodes) {
      const int g = s.sensitive[v];
      correct += s.pred[v] == s.labels[v];
      ++count[g];
      pos_pred[g] += s.pred[v];
      if (s.labels[v] == 1) {
        ++positives[g];
        tp[g] += s.pred[v];
      }
    }
    auto acc = Accuracy(s.pred, s.labels, s.nodes);
    if (s.nodes.empty()) {
      EXPECT_FALSE(acc.ok());
    } else {
      EXPECT_NEAR(*acc, static_cast<double>(correct) / s.nodes.size(), 1e-12);
    }

    // All positive-negative pairs, ties count one half.
    double wins = 0.0;
    int64_t pairs = 0;
    for (NodeId a : s.nodes) {
      for (NodeId b : s.nodes) {
        if (s.labels[a] != 1 || s.labels[b] != 0) continue;
        ++pairs;
        wins += s.scores[a] > s.scores[b] ? 1.0
                : s.scores[a] == s.scores[b] ? 0.5 : 0.0;
      }
    }
    auto auc = Auc(s.scores, s.labels, s.nodes);
    if (pairs == 0) {
      EXPECT_FALSE(auc.ok());
    } else {
      ASSERT_TRUE(auc.ok());
      EXPECT_NEAR(*auc, wins / pairs, 1e-12);
    }

    auto sp = StatisticalParity(s.pred, s.sensitive, s.nodes);
    if (count[0] == 0 || count[1] == 0) {
      EXPECT_FALSE(sp.ok());
    } else {
      ASSERT_TRUE(sp.ok());
      const double expected = static_cast<double>(pos_pred[0]) / count[0] -
                              static_cast<double>(pos_pred[1]) / count[1];
      EXPECT_NEAR(sp->signed_gap, expected, 1e-12);
      EXPECT_EQ(sp->abs_gap, std::abs(sp->signed_gap));
    }

    auto eo = EqualOpportunity(s.pred, s.labels, s.sensitive, s.nodes);
    if (positives[0] == 0 || positives[1] == 0) {
      EXPECT_FALSE(eo.ok());
    } else {
      ASSERT_TRUE(eo.ok());
      const double expected = static_cast<double>(tp[0]) / positives[0] -
                              static_cast<double>(tp[1]) / positives[1];
      EXPECT_NEAR(eo->signed_gap, expected, 1e-12);
      EXPECT_EQ(eo->abs_gap, std::abs(eo->signed_gap));
    }
  }
}

TEST(MetricPropertyTest, SwappingGroupsNegatesSignedGaps) {
  Rng rng = MakeRng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Sample s = RandomSample(rng);
    std::vector<uint8_t> swapped = s.sensitive;
    for (uint8_t& g : swapped) g = 1 - g;
    auto a = StatisticalParity(s.pred, s.sensitive, s.nodes);
    auto b = StatisticalParity(s.pred, swapped, s.nodes);
    ASSERT_EQ(a.ok(), b.ok());
    if (a.ok()) {
      EXPECT_EQ(a->abs_gap, b->abs_gap);
      EXPECT_EQ(a->signed_gap, -b->signed_gap);
    }
    auto c = EqualOpportunity(s.pred, s.labels, s.sensitive, s.nodes);
    auto d = EqualOpportunity(s.pred, s.labels, swapped, s.nodes);
    ASSERT_EQ(c.ok(), d.ok());
    if (c.ok()) {
      EXPECT_EQ(c->abs_gap, d->abs_gap);
      EXPECT_EQ(c->signed_gap, -d->signed_gap);
    }
  }
}

TEST(MetricPropertyTest, AucOfNegatedScoresIsComplement) {
  Rng rng = MakeRng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 10 + trial;
    std::vector<double> scores(n), negated(n);
    std::vector<int32_t> labels(n);
    for (int i = 0; i < n; ++i) {
      scores[i] = UniformUnit(rng);  // ties have probability zero
      negated[i] = -scores[i];
      labels[i] = i % 3 == 0;
    }
    EXPECT_NEAR(*Auc(scores, labels, Range(n)) + *Auc(negated, labels, Range(n)),
                1.0, 1e-12);
  }
}

}  // namespace
}  // namespace comfair
