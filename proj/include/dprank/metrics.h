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

#ifndef DPRANK_METRICS_H_
#define DPRANK_METRICS_H_

#include <vector>

#include "dprank/data_model.h"

namespace dprank {

// Reported in place of log(0) for an exact estimate.
inline constexpr double kLogErrorFloor = -50.0;

// tau_i = (1/n) sum_j rho(i, j), diagonal rho(i, i) = 1/2 included.
std::vector<double> Tau(const ProbMatrix& rho);

// Indices of the k largest tau values, largest first. Throws IllPosedError
// when the k-th and (k+1)-th values tie (the set is not unique), and
// ParameterError when k is outside [1, n].
std::vector<int> TrueTopK(const std::vector<double>& tau, int k);

// log(||est - truth||_inf / ||truth||_inf), natural log, floored at -50.
// Throws ParameterError for a zero truth vector or mismatched lengths.
double LinfRelLogError(const LatentScores& est, const LatentScores& truth);
double L2RelLogError(const LatentScores& est, const LatentScores& truth);

// Same metrics with the estimate shifted to mean zero first.
double LinfRelLogErrorCentered(const LatentScores& est,
                               const LatentScores& truth);
double L2RelLogErrorCentered(const LatentScores& est,
                             const LatentScores& truth);

// 1 - |est ∩ truth| / k. Both sets must have exactly k elements.
double TopKOverlapLoss(const std::vector<int>& est_set,
                       const std::vector<int>& true_set, int k);

// Size of the symmetric difference.
int HammingSets(const std::vector<int>& a, const std::vector<int>& b);

// (1/n) sum_i |pos_a(i) - pos_b(i)| where pos is the item's position in each
// ranking. Both must be permutations of the same n items.
double MeanAbsRankDiff(const std::vector<int>& ranking_a,
                       const std::vector<int>& ranking_b);

// Unit-constant separation thresholds for exact top-k recovery:
//   edge:       sqrt(log n / (n p)) + log n / (n p eps)
//   individual: sqrt(n log n / m)   + n log n / (m eps)
// eps = inf drops the second term.
double SeparationThresholdEdge(int n, double p, double epsilon);
double SeparationThresholdIndividual(int n, int m, double epsilon);

}  // namespace dprank

#endif  // DPRANK_METRICS_H_
