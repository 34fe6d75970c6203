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
#include <string>

#include "dprank/errors.h"

namespace dprank {
namespace {

constexpr double kTieTol = 1e-12;

double LogRatio(double num, double den) {
  if (num == 0.0) return kLogErrorFloor;
  return std::max(kLogErrorFloor, std::log(num / den));
}

void CheckPair(const LatentScores& est, const LatentScores& truth) {
  if (est.size() != truth.size()) {
    throw ParameterError("estimate and truth differ in length");
  }
}

double LinfNorm(const Vector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double LinfImpl(const Vector& est, const Vector& truth) {
  const double den = LinfNorm(truth);
  if (den == 0.0) throw ParameterError("relative error of a zero truth vector");
  return LogRatio(LinfNorm(est - truth), den);
}

double L2Impl(const Vector& est, const Vector& truth) {
  const double den = truth.norm();
  if (den == 0.0) throw ParameterError("relative error of a zero truth vector");
  return LogRatio((est - truth).norm(), den);
}

Vector Centered(const Vector& v) { return v.array() - v.mean(); }

double SafeLog(int n) { return std::log(static_cast<double>(n)); }

}  // namespace

std::vector<double> Tau(const ProbMatrix& rho) {
  const int n = rho.n();
  std::vector<double> tau(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += rho(i, j);
    tau[i] = s / n;
  }
  return tau;
}

std::vector<int> TrueTopK(const std::vector<double>& tau, int k) {
  const int n = static_cast<int>(tau.size());
  if (k < 1 || k > n) {
    throw ParameterError("k must lie in [1, n], got " + std::to_string(k));
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return tau[a] > tau[b]; });
  if (k < n && tau[order[k - 1]] - tau[order[k]] <= kTieTol) {
    throw IllPosedError("top-" + std::to_string(k) +
                        " set is not unique: tie at the boundary");
  }
  order.resize(k);
  return order;
}

double LinfRelLogError(const LatentScores& est, const LatentScores& truth) {
  CheckPair(est, truth);
  return LinfImpl(est.theta, truth.theta);
}

double L2RelLogError(const LatentScores& est, const LatentScores& truth) {
  CheckPair(est, truth);
  return L2Impl(est.theta, truth.theta);
}

double LinfRelLogErrorCentered(const LatentScores& est,
                               const LatentScores& truth) {
  CheckPair(est, truth);
  return LinfImpl(Centered(est.theta), truth.theta);
}

double L2RelLogErrorCentered(const LatentScores& est,
                             const LatentScores& truth) {
  CheckPair(est, truth);
  return L2Impl(Centered(est.theta), truth.theta);
}

double TopKOverlapLoss(const std::vector<int>& est_set,
                       const std::vector<int>& true_set, int k) {
  if (k < 1 || static_cast<int>(est_set.size()) != k ||
      static_cast<int>(true_set.size()) != k) {
    throw ParameterError("top-k overlap needs two sets of size k");
  }
  const std::set<int> truth(true_set.begin(), true_set.end());
  int shared = 0;
  for (int i : std::set<int>(est_set.begin(), est_set.end())) {
    shared += truth.count(i);
  }
  return 1.0 - static_cast<double>(shared) / k;
}

int HammingSets(const std::vector<int>& a, const std::vector<int>& b) {
  const std::set<int> sa(a.begin(), a.end());
  const std::set<int> sb(b.begin(), b.end());
  std::vector<int> diff;
  std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                std::back_inserter(diff));
  return static_cast<int>(diff.size());
}

double MeanAbsRankDiff(const std::vector<int>& ranking_a,
                       const std::vector<int>& ranking_b) {
  const size_t n = ranking_a.size();
  if (ranking_b.size() != n) throw ParameterError("rankings differ in length");
  if (n == 0) return 0.0;
  std::vector<long> pos_a(n, -1), pos_b(n, -1);
  for (size_t r = 0; r < n; ++r) {
    const int a = ranking_a[r], b = ranking_b[r];
    if (a < 0 || b < 0 || static_cast<size_t>(a) >= n ||
        static_cast<size_t>(b) >= n || pos_a[a] >= 0 || pos_b[b] >= 0) {
      throw ParameterError("rankings must be permutations of 0..n-1");
    }
    pos_a[a] = static_cast<long>(r);
    pos_b[b] = static_cast<long>(r);
  }
  long total = 0;
  for (size_t i = 0; i < n; ++i) total += std::labs(pos_a[i] - pos_b[i]);
  return static_cast<double>(total) / n;
}

double SeparationThresholdEdge(int n, double p, double epsilon) {
  if (n < 2 || !(p > 0.0) || !(epsilon > 0.0)) {
    throw ParameterError("separation threshold needs n >= 2, p > 0, eps > 0");
  }
  const double d = n * p;
  return std::sqrt(SafeLog(n) / d) + SafeLog(n) / (d * epsilon);
}

double SeparationThresholdIndividual(int n, int m, double epsilon) {
  if (n < 2 || m < 1 || !(epsilon > 0.0)) {
    throw ParameterError("separation threshold needs n >= 2, m >= 1, eps > 0");
  }
  const double r = n * SafeLog(n) / m;
  return std::sqrt(r) + r / epsilon;
}

}  // namespace dprank
