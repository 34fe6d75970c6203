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

#ifndef DPRANK_DATA_MODEL_H_
#define DPRANK_DATA_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "dprank/link.h"

namespace dprank {

// Items are 0-based internally. The CLI and file formats translate to item
// names or 1-based ids at the boundary.

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Latent item strengths theta. Ground truth is centered (sums to zero);
// estimates are not.
struct LatentScores {
  Vector theta;

  int size() const { return static_cast<int>(theta.size()); }
};

// Pairwise win probabilities rho(i, j) = P(i beats j).
//
// Only the strict upper triangle is stored, so rho(i, j) + rho(j, i) == 1 and
// rho(i, i) == 1/2 hold by construction.
class ProbMatrix {
 public:
  ProbMatrix() = default;
  // All off-diagonal entries 1/2.
  explicit ProbMatrix(int n);

  int n() const { return n_; }
  double operator()(int i, int j) const;
  // Sets rho(i, j) for i < j; the lower triangle follows. Throws
  // ParameterError if value is outside [0, 1] or i >= j.
  void SetUpper(int i, int j, double value);

 private:
  size_t Index(int i, int j) const;

  int n_ = 0;
  std::vector<double> upper_;
};

struct Edge {
  int i = 0;  // i < j
  int j = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Set of compared pairs, sorted lexicographically, no duplicates.
struct ComparisonGraph {
  int n = 0;
  double p = 0.0;
  std::vector<Edge> edges;
};

// One observed outcome per edge. outcomes[e] == 1 means edges[e].i beat
// edges[e].j; the reverse outcome is implied and never stored.
struct EdgeDataset {
  ComparisonGraph graph;
  std::vector<uint8_t> outcomes;

  int n() const { return graph.n; }
  size_t size() const { return outcomes.size(); }
};

// One comparison made by one user. The pair is stored with i < j.
struct ComparisonRecord {
  int i = 0;
  int j = 0;
  int winner = 0;  // i or j

  friend bool operator==(const ComparisonRecord&,
                         const ComparisonRecord&) = default;
};

// Comparisons grouped by user; every user contributes exactly L records.
// Pairs may repeat within and across users. Names are optional and only
// populated for ingested data.
struct IndividualDataset {
  int n = 0;
  int L = 0;
  std::vector<std::vector<ComparisonRecord>> users;
  std::vector<std::string> item_names;
  std::vector<std::string> user_ids;

  int m() const { return static_cast<int>(users.size()); }
  size_t record_count() const;
};

// Erdos-Renyi comparison graph: each of the n(n-1)/2 pairs independently with
// probability p. Requires n >= 2, 0 < p <= 1.
ComparisonGraph SampleErGraph(int n, double p, uint64_t seed);

// rho(i, j) = F(theta_i - theta_j).
ProbMatrix RhoFromTheta(const LatentScores& theta, const LinkFunction& link);

// Independent Bernoulli(rho(i, j)) outcome per edge.
EdgeDataset SampleEdgeOutcomes(const ComparisonGraph& graph,
                               const ProbMatrix& rho, uint64_t seed);

// m users, each comparing L pairs drawn uniformly with replacement from all
// n(n-1)/2 pairs; i wins with probability rho(i, j).
IndividualDataset SampleIndividual(int n, int m, int L, const ProbMatrix& rho,
                                   uint64_t seed);

// m users who each compare every pair exactly once (L = n(n-1)/2), in a
// per-user random order. This is the shape of exhaustive survey designs.
IndividualDataset SampleIndividualExhaustive(int n, int m,
                                             const ProbMatrix& rho,
                                             uint64_t seed);

// Synthetic ground truth: before centering, exp(theta_i) = 1 for the top
// group and exp(theta_i) ~ Unif(0.2, 0.7) for the rest. The top group is the
// first k items when top_group_inclusive is set, else the first k - 1.
// Output sums to zero. Requires 1 <= k <= n.
LatentScores GenerateTheta(int n, int k, uint64_t seed,
                           bool top_group_inclusive = true);

// Two-block instance: items [0, k) beat items [k, n) with probability
// 1/2 + delta; all other pairs are even. The tau gap between the blocks is
// exactly delta. Requires 1 <= k < n and 0 <= delta <= 1/2.
ProbMatrix TwoBlockRho(int n, int k, double delta);

}  // namespace dprank

#endif  // DPRANK_DATA_MODEL_H_
