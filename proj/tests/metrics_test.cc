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

#include "dprank/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "dprank/errors.h"
#include "dprank/private_mle.h"
#include "dprank/rng.h"
#include "gtest/gtest.h"

namespace dprank {
namespace {

LatentScores Scores(std::vector<double> v) {
  return {Eigen::Map<Vector>(v.data(), v.size())};
}

TEST(TauTest, Examples) {
  ProbMatrix two(2);
  two.SetUpper(0, 1, 0.7);
  const std::vector<double> t2 = Tau(two);
  EXPECT_NEAR(t2[0], 0.6, 1e-15);
  EXPECT_NEAR(t2[1], 0.4, 1e-15);

  for (double t : Tau(ProbMatrix(5))) EXPECT_EQ(t, 0.5);

  ProbMatrix three(3);
  three.SetUpper(0, 1, 0.9);
  three.SetUpper(0, 2, 0.8);
  three.SetUpper(1, 2, 0.6);
  const std::vector<double> t3 = Tau(three);
  EXPECT_NEAR(t3[0], (0.5 + 0.9 + 0.8) / 3, 1e-15);
  EXPECT_NEAR(t3[1], (0.1 + 0.5 + 0.6) / 3, 1e-15);
  EXPECT_NEAR(t3[2], (0.2 + 0.4 + 0.5) / 3, 1e-15);
}

TEST(TauTest, MeanIsOneHalf) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(20));
    ProbMatrix rho(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) rho.SetUpper(i, j, rng.Uniform01());
    }
    const std::vector<double> tau = Tau(rho);
    EXPECT_NEAR(std::accumulate(tau.begin(), tau.end(), 0.0) / n, 0.5, 1e-14);
  }
}

TEST(TrueTopKTest, Examples) {
  EXPECT_EQ(TrueTopK({0.7333, 0.4, 0.3667}, 1), (std::vector<int>{0}));
  const std::vector<int> both = TrueTopK({0.6, 0.4}, 2);
  EXPECT_EQ(std::set<int>(both.begin(), both.end()), (std::set<int>{0, 1}));
  EXPECT_THROW(TrueTopK({0.5, 0.5}, 1), IllPosedError);
  EXPECT_THROW(TrueTopK({0.5, 0.4}, 0), ParameterError);
  EXPECT_THROW(TrueTopK({0.5, 0.4}, 3), ParameterError);
}

TEST(TrueTopKTest, MatchesTopOfThetaUnderParametricModel) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    Vector t(10);
    for (int i = 0; i < 10; ++i) t[i] = rng.Uniform(-1, 1);
    std::vector<int> order(10);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return t[a] > t[b]; });
    const std::vector<int> s = TrueTopK(Tau(RhoFromTheta({t}, LogisticLink())), 4);
    EXPECT_EQ(std::set<int>(s.begin(), s.end()),
              std::set<int>(order.begin(), order.begin() + 4));
  }
}

TEST(RelLogErrorTest, Examples) {
  const LatentScores truth = Scores({1.0, -0.5, -0.5});
  EXPECT_EQ(LinfRelLogError(truth, truth), kLogErrorFloor);
  EXPECT_EQ(L2RelLogError(truth, truth), kLogErrorFloor);
  const LatentScores twice = Scores({2.0, -1.0, -1.0});
  EXPECT_NEAR(LinfRelLogError(twice, truth), 0.0, 1e-15);
  EXPECT_NEAR(L2RelLogError(twice, truth), 0.0, 1e-15);
  const LatentScores off = Scores({1.1, -0.5, -0.5});
  EXPECT_NEAR(LinfRelLogError(off, truth), std::log(0.1), 1e-12);
  EXPECT_NEAR(LinfRelLogError(off, truth), -2.302585, 1e-6);
  EXPECT_THROW(LinfRelLogError(truth, Scores({0, 0, 0})), ParameterError);
  EXPECT_THROW(L2RelLogError(truth, Scores({1, -1})), ParameterError);
}

TEST(RelLogErrorTest, CenteredIgnoresShift) {
  const LatentScores truth = Scores({1.0, -0.25, -0.75});
  const LatentScores shifted = Scores({4.0, 2.75, 2.25});
  EXPECT_EQ(LinfRelLogErrorCentered(shifted, truth), kLogErrorFloor);
  EXPECT_EQ(L2RelLogErrorCentered(shifted, truth), kLogErrorFloor);
  EXPECT_NEAR(LinfRelLogError(shifted, truth), std::log(3.0), 1e-12);
}

TEST(SetMetricsTest, Examples) {
  EXPECT_EQ(TopKOverlapLoss({0, 1}, {1, 0}, 2), 0.0);
  EXPECT_EQ(TopKOverlapLoss({0, 1}, {2, 3}, 2), 1.0);
  EXPECT_EQ(TopKOverlapLoss({0, 1}, {0, 2}, 2), 0.5);
  EXPECT_THROW(TopKOverlapLoss({0}, {0, 2}, 2), ParameterError);
  EXPECT_EQ(HammingSets({0, 1}, {0, 2}), 2);
  EXPECT_EQ(HammingSets({3, 1}, {1, 3}), 0);
  EXPECT_EQ(HammingSets({0}, {1, 2}), 3);
}

TEST(SetMetricsTest, HammingAndOverlapAgree) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> items(12);
    std::iota(items.begin(), items.end(), 0);
    const int k = 1 + static_cast<int>(rng.UniformInt(12));
    auto pick = [&] {
      for (int i = 11; i > 0; --i) std::swap(items[i], items[rng.UniformInt(i + 1)]);
      return std::vector<int>(items.begin(), items.begin() + k);
    };
    const std::vector<int> a = pick(), b = pick();
    const int common = k - HammingSets(a, b) / 2;
    EXPECT_EQ(HammingSets(a, b), 2 * (k - common));
    EXPECT_DOUBLE_EQ(TopKOverlapLoss(a, b, k), HammingSets(a, b) / (2.0 * k));
  }
}

TEST(MeanAbsRankDiffTest, Examples) {
  EXPECT_EQ(MeanAbsRankDiff({2, 0, 1}, {2, 0, 1}), 0.0);
  EXPECT_EQ(MeanAbsRankDiff({0, 1}, {1, 0}), 1.0);
  EXPECT_NEAR(MeanAbsRankDiff({0, 1, 2}, {2, 1, 0}), 4.0 / 3.0, 1e-15);
  EXPECT_THROW(MeanAbsRankDiff({0, 1}, {0, 1, 2}), ParameterError);
  EXPECT_THROW(MeanAbsRankDiff({0, 0}, {0, 1}), ParameterError);
}

TEST(MeanAbsRankDiffTest, MaximumForSixItemsByBruteForce) {
  std::vector<int> ref = {0, 1, 2, 3, 4, 5}, perm = ref;
  double worst = 0.0;
  int count = 0;
  do {
    worst = std::max(worst, MeanAbsRankDiff(perm, ref));
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(count, 720);
  // Reversal is extremal: (2/n) floor(n^2/4) = 3 for n = 6.
  EXPECT_DOUBLE_EQ(worst, 2.0 / 6 * (36 / 4));
  EXPECT_DOUBLE_EQ(MeanAbsRankDiff({5, 4, 3, 2, 1, 0}, ref), worst);
}

TEST(SeparationThresholdTest, Formulas) {
  EXPECT_NEAR(SeparationThresholdEdge(100, 1.0, 1.0),
              std::sqrt(std::log(100.0) / 100) + std::log(100.0) / 100, 1e-15);
  EXPECT_NEAR(SeparationThresholdEdge(100, 1.0, 1.0), 0.26065, 1e-5);
  EXPECT_NEAR(SeparationThresholdIndividual(16, 1000, 1.0),
              std::sqrt(16 * std::log(16.0) / 1000) + 16 * std::log(16.0) / 1000,
              1e-15);
  EXPECT_NEAR(SeparationThresholdIndividual(16, 1000, 1.0), 0.254983, 1e-6);
  EXPECT_NEAR(SeparationThresholdEdge(100, 1.0, kNonPrivate),
              std::sqrt(std::log(100.0) / 100), 1e-15);
  EXPECT_NEAR(SeparationThresholdIndividual(16, 1000, kNonPrivate),
              std::sqrt(16 * std::log(16.0) / 1000), 1e-15);
}

}  // namespace
}  // namespace dprank
