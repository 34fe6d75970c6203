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

#ifndef DPRANK_PRIVACY_AUDIT_H_
#define DPRANK_PRIVACY_AUDIT_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dprank/data_model.h"
#include "dprank/noisy_counts.h"
#include "dprank/rng.h"

namespace dprank {

enum class AdjacencyKind { kEdgeFlip, kEdgeSwap, kUserReplacement };

const char* AdjacencyKindName(AdjacencyKind kind);

// Two datasets that differ by one unit of the privacy model: one flipped
// outcome or one edge swapped for another (edge adjacency), or one user's
// whole bundle of L records replaced (individual adjacency).
template <typename Dataset>
struct AdjacentPair {
  Dataset base;
  Dataset variant;
  AdjacencyKind kind;
};

using EdgeAdjacentPair = AdjacentPair<EdgeDataset>;
using UserAdjacentPair = AdjacentPair<IndividualDataset>;

// Every single-outcome flip, then every swap of one edge (i, j) for a pair
// (a, b) not in the graph with either outcome. When there are more than
// `budget` candidates, a seeded uniform subset of size `budget` is returned
// instead. Throws ParameterError for budget < 1.
std::vector<EdgeAdjacentPair> EnumerateAdjacent(const EdgeDataset& data,
                                                size_t budget,
                                                uint64_t seed = 0);

// Replacements of one user's bundle. Win counts only see who won each record,
// so the candidates cover every distinct assignment of the L wins to items
// (each realized by a concrete bundle) for every user. Subsampled to `budget`
// as above.
std::vector<UserAdjacentPair> EnumerateUserReplacements(
    const IndividualDataset& data, size_t budget, uint64_t seed = 0);

struct SensitivityReport {
  double max_l1 = 0.0;              // max ||N - N'||_1 over the pairs
  double max_per_coordinate = 0.0;  // max |N_i - N'_i|
  size_t pairs = 0;
};

// Raised when a pair exceeds the declared bound; `witness` indexes the pair.
class SensitivityViolation : public std::runtime_error {
 public:
  SensitivityViolation(const std::string& what, size_t witness)
      : std::runtime_error(what), witness_(witness) {}
  size_t witness() const { return witness_; }

 private:
  size_t witness_;
};

// Edge pairs must satisfy ||dN||_1 <= 2; user replacements |dN_i| <= L.
SensitivityReport SensitivityCheck(const std::vector<EdgeAdjacentPair>& pairs);
SensitivityReport SensitivityCheck(const std::vector<UserAdjacentPair>& pairs);

// A randomized mechanism from win counts to an item set. Randomness comes
// from the supplied generator so replays share one stream per side.
using CountMechanism =
    std::function<std::vector<int>(const WinCounts& counts, Rng& rng)>;

enum class EpsilonStatus { kOk, kInconclusive, kNonPrivate };

const char* EpsilonStatusName(EpsilonStatus status);

struct EpsilonEstimate {
  EpsilonStatus status = EpsilonStatus::kInconclusive;
  // max over output sets A with both counts >= count_floor of
  // |log(P(A | base) / P(A | variant))|. A lower bound on the true epsilon.
  double value = 0.0;
  size_t outcomes_compared = 0;
};

struct EpsilonEstimatorConfig {
  size_t samples = 1000000;
  size_t count_floor = 30;
};

inline constexpr size_t kMinAuditSamples = 100000;

// Replays `mechanism` `samples` times on each side with independent seeds.
// Output sets are compared as sets (order ignored). Throws ParameterError for
// fewer than kMinAuditSamples samples.
EpsilonEstimate EstimateEpsilon(const CountMechanism& mechanism,
                                const WinCounts& base,
                                const WinCounts& variant,
                                const EpsilonEstimatorConfig& config,
                                uint64_t seed);

struct AuditConfig {
  EpsilonEstimatorConfig estimator;
  // Cap on enumerated adjacent pairs for the sensitivity check.
  size_t enumeration_budget = 100000;
  // Distinct variant count vectors replayed for the epsilon estimate, taken
  // in decreasing order of ||N - N'||_1 so the worst cases are always audited.
  size_t max_variants = 8;
  uint64_t seed = 0;
};

// Audit of the noisy top-k count mechanism on one dataset.
struct AuditReport {
  std::string regime;
  double max_l1_sensitivity = 0.0;
  double per_coordinate_max = 0.0;
  std::optional<double> epsilon_hat;  // set when at least one pair was conclusive
  double epsilon_declared = 0.0;
  size_t samples = 0;
  size_t pairs = 0;
  bool non_private = false;
  bool sensitivity_ok = true;
  std::string sensitivity_violation;
};

// Noisy top-k count mechanism for the given regime.
CountMechanism NoisyTopKMechanism(int k, double epsilon, Regime regime, int L);

// Enumerates adjacent pairs of `data`, checks the sensitivity bound, and
// estimates epsilon of the noisy top-k mechanism over the worst pairs.
AuditReport AuditEdgeCounts(const EdgeDataset& data, int k, double epsilon,
                            const AuditConfig& config);
AuditReport AuditUserCounts(const IndividualDataset& data, int k,
                            double epsilon, const AuditConfig& config);

// Small default instances (n = 4). The edge instance leaves one pair
// uncompared so that swaps exist; win counts are (2, 1, 1, 1).
EdgeDataset DefaultEdgeAuditInstance();
IndividualDataset DefaultUserAuditInstance(int L, uint64_t seed = 7);

}  // namespace dprank

#endif  // DPRANK_PRIVACY_AUDIT_H_
