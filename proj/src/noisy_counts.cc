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
#include <numeric>
#include <string>

#include "dprank/errors.h"
#include "dprank/rng.h"

namespace dprank {

int64_t WinCounts::total() const {
  return std::accumulate(wins.begin(), wins.end(), int64_t{0});
}

WinCounts CountWins(const EdgeDataset& data) {
  WinCounts c{std::vector<int64_t>(data.n(), 0)};
  for (size_t e = 0; e < data.size(); ++e) {
    const Edge& edge = data.graph.edges[e];
    ++c.wins[data.outcomes[e] ? edge.i : edge.j];
  }
  return c;
}

WinCounts CountWins(const IndividualDataset& data) {
  WinCounts c{std::vector<int64_t>(data.n, 0)};
  for (const auto& user : data.users) {
    for (const ComparisonRecord& r : user) ++c.wins[r.winner];
  }
  return c;
}

double CountNoiseScale(double epsilon, Regime regime, int L) {
  if (!(epsilon > 0.0)) {
    throw ParameterError("epsilon must be positive (or inf for non-private)");
  }
  if (L < 1) throw ParameterError("L must be >= 1");
  const double sensitivity = regime == Regime::kEdge ? 2.0 : L;
  return sensitivity / epsilon;
}

NoisyCounts PerturbCounts(const WinCounts& counts, double scale,
                          uint64_t seed) {
  Rng rng(seed);
  return PerturbCounts(counts, scale, rng);
}

NoisyCounts PerturbCounts(const WinCounts& counts, double scale, Rng& rng) {
  if (!(scale >= 0.0)) throw ParameterError("noise scale must be >= 0");
  NoisyCounts out;
  out.scale = scale;
  out.values.reserve(counts.wins.size());
  for (int64_t w : counts.wins) {
    out.values.push_back(static_cast<double>(w) + rng.Laplace(scale));
  }
  return out;
}

std::vector<int> TopKOfValues(const std::vector<double>& values, int k) {
  const int n = static_cast<int>(values.size());
  if (k < 1 || k > n) {
    throw ParameterError("k must lie in [1, n], got " + std::to_string(k));
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto before = [&](int a, int b) {
    return values[a] > values[b] || (values[a] == values[b] && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + k, order.end(), before);
  order.resize(k);
  return order;
}

std::vector<int> NoisyFullRanking(const WinCounts& counts, double epsilon,
                                  Regime regime, int L, uint64_t seed) {
  const double scale = CountNoiseScale(epsilon, regime, L);
  if (counts.n() == 0) return {};
  return TopKOfValues(PerturbCounts(counts, scale, seed).values, counts.n());
}

std::vector<int> NoisyTopK(const WinCounts& counts, int k, double epsilon,
                           Regime regime, int L, uint64_t seed) {
  const double scale = CountNoiseScale(epsilon, regime, L);
  return TopKOfValues(PerturbCounts(counts, scale, seed).values, k);
}

}  // namespace dprank
