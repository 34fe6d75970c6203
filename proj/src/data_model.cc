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

#include "dprank/data_model.h"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "dprank/errors.h"
#include "dprank/rng.h"

namespace dprank {
namespace {

void CheckItemCount(int n) {
  if (n < 2) throw ParameterError("need at least 2 items, got " + std::to_string(n));
}

// Maps r in [0, n(n-1)/2) to the r-th pair in lexicographic order.
Edge PairFromIndex(int n, uint64_t r) {
  int i = 0;
  uint64_t row = static_cast<uint64_t>(n - 1);
  while (r >= row) {
    r -= row;
    --row;
    ++i;
  }
  return Edge{i, i + 1 + static_cast<int>(r)};
}

ComparisonRecord DrawOutcome(const Edge& e, const ProbMatrix& rho, Rng& rng) {
  return ComparisonRecord{e.i, e.j, rng.Bernoulli(rho(e.i, e.j)) ? e.i : e.j};
}

}  // namespace

ProbMatrix::ProbMatrix(int n)
    : n_(n), upper_(static_cast<size_t>(n) * (n > 0 ? n - 1 : 0) / 2, 0.5) {}

size_t ProbMatrix::Index(int i, int j) const {
  // Row-major strict upper triangle.
  const size_t ii = static_cast<size_t>(i);
  return ii * (2 * static_cast<size_t>(n_) - ii - 1) / 2 + (j - i - 1);
}

double ProbMatrix::operator()(int i, int j) const {
  if (i == j) return 0.5;
  if (i < j) return upper_[Index(i, j)];
  return 1.0 - upper_[Index(j, i)];
}

void ProbMatrix::SetUpper(int i, int j, double value) {
  if (!(i < j) || i < 0 || j >= n_) throw ParameterError("SetUpper needs i < j < n");
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ParameterError("probability out of [0, 1]");
  }
  upper_[Index(i, j)] = value;
}

size_t IndividualDataset::record_count() const {
  size_t total = 0;
  for (const auto& u : users) total += u.size();
  return total;
}

ComparisonGraph SampleErGraph(int n, double p, uint64_t seed) {
  CheckItemCount(n);
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("p must lie in (0, 1]");
  Rng rng(seed);
  ComparisonGraph g;
  g.n = n;
  g.p = p;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // p == 1 must not consume randomness differently from p < 1, so the
      // draw always happens.
      if (rng.Uniform01() < p) g.edges.push_back({i, j});
    }
  }
  return g;
}

ProbMatrix RhoFromTheta(const LatentScores& theta, const LinkFunction& link) {
  const int n = theta.size();
  ProbMatrix rho(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      rho.SetUpper(i, j, link.eval(theta.theta[i] - theta.theta[j]));
    }
  }
  return rho;
}

EdgeDataset SampleEdgeOutcomes(const ComparisonGraph& graph,
                               const ProbMatrix& rho, uint64_t seed) {
  if (graph.n != rho.n()) {
    throw ParameterError("graph has " + std::to_string(graph.n) +
                         " items but rho has " + std::to_string(rho.n()));
  }
  Rng rng(seed);
  EdgeDataset data;
  data.graph = graph;
  data.outcomes.reserve(graph.edges.size());
  for (const Edge& e : graph.edges) {
    data.outcomes.push_back(rng.Bernoulli(rho(e.i, e.j)) ? 1 : 0);
  }
  return data;
}

IndividualDataset SampleIndividual(int n, int m, int L, const ProbMatrix& rho,
                                   uint64_t seed) {
  CheckItemCount(n);
  if (m < 1) throw ParameterError("need at least one user");
  if (L < 1) throw ParameterError("L must be >= 1");
  if (rho.n() != n) throw ParameterError("rho dimension does not match n");
  const uint64_t pairs = static_cast<uint64_t>(n) * (n - 1) / 2;
  Rng rng(seed);
  IndividualDataset data;
  data.n = n;
  data.L = L;
  data.users.resize(m);
  for (auto& user : data.users) {
    user.reserve(L);
    for (int l = 0; l < L; ++l) {
      user.push_back(DrawOutcome(PairFromIndex(n, rng.UniformInt(pairs)), rho, rng));
    }
  }
  return data;
}

IndividualDataset SampleIndividualExhaustive(int n, int m,
                                             const ProbMatrix& rho,
                                             uint64_t seed) {
  CheckItemCount(n);
  if (m < 1) throw ParameterError("need at least one user");
  if (rho.n() != n) throw ParameterError("rho dimension does not match n");
  std::vector<Edge> all;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) all.push_back({i, j});
  }
  Rng rng(seed);
  IndividualDataset data;
  data.n = n;
  data.L = static_cast<int>(all.size());
  data.users.resize(m);
  for (auto& user : data.users) {
    // Fisher-Yates with our own integer draws for portability.
    std::vector<Edge> order = all;
    for (size_t a = order.size(); a > 1; --a) {
      std::swap(order[a - 1], order[rng.UniformInt(a)]);
    }
    for (const Edge& e : order) user.push_back(DrawOutcome(e, rho, rng));
  }
  return data;
}

LatentScores GenerateTheta(int n, int k, uint64_t seed,
                           bool top_group_inclusive) {
  if (n < 1) throw ParameterError("n must be >= 1");
  if (k < 1 || k > n) {
    throw ParameterError("k must lie in [1, n], got " + std::to_string(k));
  }
  const int top = top_group_inclusive ? k : k - 1;
  Rng rng(seed);
  LatentScores out{Vector::Zero(n)};
  for (int i = top; i < n; ++i) out.theta[i] = std::log(rng.Uniform(0.2, 0.7));
  out.theta.array() -= out.theta.mean();
  return out;
}

ProbMatrix TwoBlockRho(int n, int k, double delta) {
  CheckItemCount(n);
  if (k < 1 || k >= n) throw ParameterError("k must lie in [1, n)");
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw ParameterError("two-block gap must lie in [0, 1/2], got " +
                         std::to_string(delta));
  }
  ProbMatrix rho(n);
  for (int i = 0; i < k; ++i) {
    for (int j = k; j < n; ++j) rho.SetUpper(i, j, 0.5 + delta);
  }
  return rho;
}

}  // namespace dprank
