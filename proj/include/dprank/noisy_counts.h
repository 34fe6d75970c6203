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

#ifndef DPRANK_NOISY_COUNTS_H_
#define DPRANK_NOISY_COUNTS_H_

#include <cstdint>
#include <vector>

#include "dprank/data_model.h"
#include "dprank/private_mle.h"
#include "dprank/rng.h"

namespace dprank {

// Wins per item. Each comparison awards exactly one win, so the total equals
// the number of comparisons.
struct WinCounts {
  std::vector<int64_t> wins;

  int n() const { return static_cast<int>(wins.size()); }
  int64_t total() const;
};

struct NoisyCounts {
  std::vector<double> values;
  double scale = 0.0;  // Laplace scale; 0 means values == wins exactly
};

WinCounts CountWins(const EdgeDataset& data);
WinCounts CountWins(const IndividualDataset& data);

// Laplace scale for the count mechanism: 2/eps for edge adjacency (one
// comparison moves one win, l1 change 2) and L/eps for user replacement.
// eps = inf gives 0. Throws ParameterError for eps <= 0 or L < 1.
double CountNoiseScale(double epsilon, Regime regime, int L);

// N + i.i.d. Laplace(scale) noise, drawn from `seed`.
NoisyCounts PerturbCounts(const WinCounts& counts, double scale, uint64_t seed);
NoisyCounts PerturbCounts(const WinCounts& counts, double scale, Rng& rng);

// Items ordered by noisy count, largest first, ties to the lower index.
// Every prefix of this ordering is the noisy top-k set for the same draw.
std::vector<int> NoisyFullRanking(const WinCounts& counts, double epsilon,
                                  Regime regime, int L, uint64_t seed);

// The k items with the largest noisy counts, ordered as in NoisyFullRanking.
std::vector<int> NoisyTopK(const WinCounts& counts, int k, double epsilon,
                           Regime regime, int L, uint64_t seed);

// Top-k of already perturbed values (post-processing only).
std::vector<int> TopKOfValues(const std::vector<double>& values, int k);

}  // namespace dprank

#endif  // DPRANK_NOISY_COUNTS_H_
