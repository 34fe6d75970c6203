// Copyright 2026 The dprank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dprank/noisy_counts.h"

#include <algorithm>

#include "dprank/errors.h"
#include "dprank/rng.h"
#include "gtest/gtest.h"

namespace dprank {
namespace {

EdgeDataset ThreeItemTournament() {
  EdgeDataset d;
  d.graph = {3, 1.0, {{0, 1}, {0, 2}, {1, 2}}};
  d.outcomes = {1, 1, 1};
  return d;
}

TEST(CountWinsTest, EdgeCounts) {
  EXPECT_EQ(CountWins(ThreeItemTournament()).wins,
            (std::vector<int64_t>{2, 1, 0}));
  EdgeDataset empty;
  empty.graph.n = 4;
  EXPECT_EQ(CountWins(empty).wins, (std::vector<int64_t>{0, 0, 0, 0}));
}

TEST(CountWinsTest, WinsOfSecondElementCount) {
  EdgeDataset d = ThreeItemTournament();
  d.outcomes = {0, 0, 0};
  EXPECT_EQ(CountWins(d).wins, (std::vector<int64_t>{0, 1, 2}));
}

TEST(CountWinsTest, Conservation) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const EdgeDataset d =
        SampleEdgeOutcomes(SampleErGraph(15, 0.4, seed), ProbMatrix(15), seed);
    EXPECT_EQ(CountWins(d).total(), static_cast<int64_t>(d.size()));
    const IndividualDataset u = SampleIndividual(5, 2, 3, ProbMatrix(5), seed);
    EXPECT_EQ(CountWins(u).total(), 6);
  }
}

TEST(CountNoiseScaleTest, Scales) {
  EXPECT_EQ(CountNoiseScale(2.0, Regime::kEdge, 1), 1.0);
  EXPECT_EQ(CountNoiseScale(1.0, Regime::kIndividual, 5), 5.0);
  EXPECT_EQ(CountNoiseScale(kNonPrivate, Regime::kIndividual, 5), 0.0);
  EXPECT_THROW(CountNoiseScale(0.0, Regime::kEdge, 1), ParameterError);
  EXPECT_THROW(CountNoiseScale(1.0, Regime::kIndividual, 0), ParameterError);
}

TEST(PerturbCountsTest, ZeroScaleIsExact) {
  const WinCounts c{{4, 0, 7}};
  const NoisyCounts noisy = PerturbCounts(c, 0.0, 3);
  EXPECT_EQ(noisy.values, (std::vector<double>{4, 0, 7}));
  EXPECT_EQ(noisy.scale, 0.0);
}

TEST(NoisyTopKTest, NoiselessIsCopeland) {
  const WinCounts c{{2, 1, 0}};
  EXPECT_EQ(NoisyTopK(c, 1, kNonPrivate, Regime::kEdge, 1, 0),
            (std::vector<int>{0}));
  EXPECT_EQ(NoisyFullRanking(WinCounts{{0, 5, 3}}, kNonPrivate, Regime::kEdge, 1, 0),
            (std::vector<int>{1, 2, 0}));
  EXPECT_EQ(NoisyFullRanking(WinCounts{{3}}, 1.0, Regime::kEdge, 1, 0),
            (std::vector<int>{0}));
  EXPECT_EQ(NoisyTopK(WinCounts{{1, 1, 1}}, 2, kNonPrivate, Regime::kEdge, 1, 0),
            (std::vector<int>{0, 1}));
}

TEST(NoisyTopKTest, PrefixOfFullRankingWithSameSeed) {
  Rng rng(1);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    WinCounts c;
    for (int i = 0; i < 12; ++i) c.wins.push_back(rng.UniformInt(20));
    const std::vector<int> full =
        NoisyFullRanking(c, 0.7, Regime::kIndividual, 3, seed);
    for (int k = 1; k <= 12; ++k) {
      const std::vector<int> top = NoisyTopK(c, k, 0.7, Regime::kIndividual, 3, seed);
      EXPECT_TRUE(std::equal(top.begin(), top.end(), full.begin()));
    }
  }
}

TEST(NoisyTopKTest, DependsOnlyOnNoisyValues) {
  const WinCounts c{{5, 9, 2, 9, 4}};
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const NoisyCounts noisy = PerturbCounts(c, CountNoiseScale(1.0, Regime::kEdge, 1), seed);
    EXPECT_EQ(NoisyTopK(c, 2, 1.0, Regime::kEdge, 1, seed), TopKOfValues(noisy.values, 2));
  }
}

TEST(NoisyTopKTest, NoiselessRespectsStrictOrder) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    WinCounts c;
    for (int i = 0; i < 8; ++i) c.wins.push_back(rng.UniformInt(6));
    const std::vector<int> order =
        NoisyFullRanking(c, kNonPrivate, Regime::kEdge, 1, trial);
    for (int a = 0; a < 8; ++a) {
      for (int b = a + 1; b < 8; ++b) {
        EXPECT_GE(c.wins[order[a]], c.wins[order[b]]);
      }
    }
  }
}

TEST(NoisyTopKTest, RejectsBadK) {
  const WinCounts c{{1, 2}};
  EXPECT_THROW(NoisyTopK(c, 0, 1.0, Regime::kEdge, 1, 0), ParameterError);
  EXPECT_THROW(NoisyTopK(c, 3, 1.0, Regime::kEdge, 1, 0), ParameterError);
}

}  // namespace
}  // namespace dprank
