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

#include "dprank/likelihood.h"

#include <cmath>

#include "Eigen/Eigenvalues"
#include "dprank/rng.h"
#include "gtest/gtest.h"

namespace dprank {
namespace {

EdgeDataset SingleEdge(uint8_t outcome) {
  EdgeDataset d;
  d.graph = {2, 1.0, {{0, 1}}};
  d.outcomes = {outcome};
  return d;
}

Vector RandomVector(Rng& rng, int n, double lo, double hi) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.Uniform(lo, hi);
  return v;
}

EdgeDataset RandomEdgeData(int n, double p, uint64_t seed) {
  Rng rng(seed);
  const LatentScores t{RandomVector(rng, n, -1, 1)};
  return SampleEdgeOutcomes(SampleErGraph(n, p, seed + 1),
                            RhoFromTheta(t, LogisticLink()), seed + 2);
}

// Raw-record negative log-likelihood, one term per comparison.
double RawRecordNll(const IndividualDataset& d, const Vector& theta) {
  double s = 0.0;
  for (const auto& u : d.users) {
    for (const auto& r : u) {
      const int loser = r.winner == r.i ? r.j : r.i;
      s += std::log1p(std::exp(-(theta[r.winner] - theta[loser])));
    }
  }
  return s;
}

TEST(AggregateTest, CountsPerPair) {
  IndividualDataset d{3, 2, {{{0, 1, 0}, {0, 1, 1}}}, {}, {}};
  const AggregatedCounts a = Aggregate(d);
  ASSERT_EQ(a.pairs.size(), 1u);
  EXPECT_EQ(a.pairs[0].compared, 2);
  EXPECT_DOUBLE_EQ(a.pairs[0].ybar(), 0.5);
  EXPECT_EQ(a.total(), 2);
}

TEST(AggregateTest, ConservesRecordCount) {
  const IndividualDataset d = SampleIndividual(5, 2, 3, ProbMatrix(5), 8);
  EXPECT_EQ(Aggregate(d).total(), 6);
  for (const PairCount& pc : Aggregate(d).pairs) {
    EXPECT_GT(pc.compared, 0);
    EXPECT_LT(pc.i, pc.j);
  }
}

TEST(NllTest, ClosedFormValues) {
  const LinkFunction f = LogisticLink();
  EXPECT_NEAR(Nll(Vector::Zero(2), ObjectiveSpec(SingleEdge(1), f)),
              std::log(2.0), 1e-15);
  AggregatedCounts a{2, {{0, 1, 4, 3}}};
  EXPECT_NEAR(Nll(Vector::Zero(2), ObjectiveSpec(a, f)), 4 * std::log(2.0),
              1e-14);
}

TEST(NllTest, AggregatedMatchesRawRecords) {
  const LinkFunction f = LogisticLink();
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const int n = 2 + static_cast<int>(rng.UniformInt(5));
    const int m = 1 + static_cast<int>(rng.UniformInt(20));
    const int L = 1 + static_cast<int>(rng.UniformInt(5));
    const Vector theta = RandomVector(rng, n, -2, 2);
    const IndividualDataset d =
        SampleIndividual(n, m, L, RhoFromTheta({theta}, f), seed);
    const double raw = RawRecordNll(d, theta);
    EXPECT_NEAR(Nll(theta, ObjectiveSpec(Aggregate(d), f)), raw,
                1e-12 * std::max(1.0, raw));
  }
}

TEST(NllTest, TranslationInvariant) {
  const ObjectiveSpec spec(RandomEdgeData(8, 0.7, 3), LogisticLink());
  Rng rng(3);
  const Vector theta = RandomVector(rng, 8, -1, 1);
  EXPECT_NEAR(Nll(theta, spec), Nll((theta.array() + 2.5).matrix(), spec), 1e-10);
}

TEST(GradientTest, SingleEdgeAtZero) {
  const Vector g =
      Gradient(Vector::Zero(2), ObjectiveSpec(SingleEdge(1), LogisticLink()));
  EXPECT_NEAR(g[0], -0.5, 1e-15);
  EXPECT_NEAR(g[1], 0.5, 1e-15);
}

TEST(GradientTest, SumsToZeroWithoutPenalty) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const ObjectiveSpec spec(RandomEdgeData(9, 0.5, seed), LogisticLink());
    Rng rng(seed);
    EXPECT_NEAR(Gradient(RandomVector(rng, 9, -3, 3), spec).sum(), 0.0, 1e-12);
  }
}

TEST(GradientTest, MatchesFiniteDifferences) {
  const double h = 1e-6;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const double gamma = seed % 2 ? 5.0 : 0.0;
    const ObjectiveSpec spec(RandomEdgeData(10, 1.0, seed), LogisticLink(),
                             gamma, RandomVector(rng, 10, -3, 3));
    const Vector theta = RandomVector(rng, 10, -1, 1);
    const Vector g = Gradient(theta, spec);
    Vector fd(10);
    for (int i = 0; i < 10; ++i) {
      Vector up = theta, down = theta;
      up[i] += h;
      down[i] -= h;
      fd[i] = (Objective(up, spec) - Objective(down, spec)) / (2 * h);
    }
    EXPECT_LE((g - fd).norm() / g.norm(), 1e-5) << "seed " << seed;
  }
}

TEST(HessianTest, SingleEdgeAtZero) {
  const Matrix hess =
      Hessian(Vector::Zero(2), ObjectiveSpec(SingleEdge(0), LogisticLink()));
  EXPECT_NEAR(hess(0, 0), 0.25, 1e-15);
  EXPECT_NEAR(hess(0, 1), -0.25, 1e-15);
  EXPECT_NEAR(hess(1, 1), 0.25, 1e-15);
}

TEST(HessianTest, MatchesFiniteDifferencesOfGradient) {
  const double h = 1e-6;
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed + 100);
    const ObjectiveSpec spec(RandomEdgeData(10, 1.0, seed), LogisticLink(),
                             seed % 2 ? 5.0 : 0.0);
    const Vector theta = RandomVector(rng, 10, -1, 1);
    const Matrix hess = Hessian(theta, spec);
    Matrix fd(10, 10);
    for (int i = 0; i < 10; ++i) {
      Vector up = theta, down = theta;
      up[i] += h;
      down[i] -= h;
      fd.col(i) = (Gradient(up, spec) - Gradient(down, spec)) / (2 * h);
    }
    EXPECT_LE((hess - fd).norm() / hess.norm(), 1e-4) << "seed " << seed;
  }
}

TEST(HessianTest, SymmetricAndDefinite) {
  for (double gamma : {0.0, 0.5}) {
    const ObjectiveSpec spec(RandomEdgeData(7, 0.6, 4), LogisticLink(), gamma);
    Rng rng(4);
    const Matrix hess = Hessian(RandomVector(rng, 7, -2, 2), spec);
    EXPECT_LE((hess - hess.transpose()).norm(), 1e-15);
    const double min_eig =
        Eigen::SelfAdjointEigenSolver<Matrix>(hess).eigenvalues().minCoeff();
    if (gamma == 0.0) {
      EXPECT_GE(min_eig, -1e-12);
    } else {
      EXPECT_GE(min_eig, gamma - 1e-12);
    }
  }
}

TEST(ObjectiveTest, StronglyConvex) {
  const double gamma = 3.0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const ObjectiveSpec spec(RandomEdgeData(6, 0.8, seed), LogisticLink(),
                             gamma, RandomVector(rng, 6, -1, 1));
    const Vector a = RandomVector(rng, 6, -3, 3), b = RandomVector(rng, 6, -3, 3);
    const double gap =
        Objective(b, spec) - Objective(a, spec) - Gradient(a, spec).dot(b - a);
    EXPECT_GE(gap, gamma / 2 * (b - a).squaredNorm() - 1e-10);
  }
}

TEST(ObjectiveTest, WithPenaltySharesTerms) {
  const ObjectiveSpec base(RandomEdgeData(6, 1.0, 1), LogisticLink());
  const ObjectiveSpec pen = base.WithPenalty(2.0, Vector::Ones(6));
  EXPECT_EQ(&base.terms(), &pen.terms());
  EXPECT_EQ(pen.gamma(), 2.0);
  EXPECT_EQ(base.w(), Vector::Zero(6));
  const Vector theta = Vector::LinSpaced(6, -1, 1);
  EXPECT_NEAR(Objective(theta, pen),
              Nll(theta, base) + theta.squaredNorm() + theta.sum(), 1e-12);
  EXPECT_EQ(base.MaxWeightedDegree(), 5.0);
}

}  // namespace
}  // namespace dprank
