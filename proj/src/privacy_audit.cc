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

#include "dprank/privacy_audit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>
#include <utility>

#include "dprank/errors.h"

namespace dprank {
namespace {

using Histogram = std::unordered_map<uint64_t, size_t>;

// Picks `budget` distinct indices from [0, total) when total exceeds it
// (Floyd's algorithm), otherwise all of them. Result is sorted.
std::vector<size_t> ChooseIndices(size_t total, size_t budget, uint64_t seed) {
  std::vector<size_t> out;
  if (total <= budget) {
    out.resize(total);
    std::iota(out.begin(), out.end(), size_t{0});
    return out;
  }
  Rng rng(seed);
  std::set<size_t> chosen;
  for (size_t j = total - budget; j < total; ++j) {
    const size_t t = rng.UniformInt(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

EdgeDataset FlipOutcome(const EdgeDataset& data, size_t e) {
  EdgeDataset v = data;
  v.outcomes[e] ^= 1;
  return v;
}

EdgeDataset SwapEdge(const EdgeDataset& data, size_t e, const Edge& added,
                     uint8_t outcome) {
  EdgeDataset v;
  v.graph.n = data.graph.n;
  v.graph.p = data.graph.p;
  bool placed = false;
  for (size_t k = 0; k < data.size(); ++k) {
    if (k == e) continue;
    const Edge& edge = data.graph.edges[k];
    if (!placed && added < edge) {
      v.graph.edges.push_back(added);
      v.outcomes.push_back(outcome);
      placed = true;
    }
    v.graph.edges.push_back(edge);
    v.outcomes.push_back(data.outcomes[k]);
  }
  if (!placed) {
    v.graph.edges.push_back(added);
    v.outcomes.push_back(outcome);
  }
  return v;
}

// All ways to distribute L wins over n items.
void Compositions(int n, int remaining, std::vector<int>& current,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == n - 1) {
    current.push_back(remaining);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int c = remaining; c >= 0; --c) {
    current.push_back(c);
    Compositions(n, remaining - c, current, out);
    current.pop_back();
  }
}

std::vector<ComparisonRecord> BundleFor(const std::vector<int>& wins) {
  std::vector<ComparisonRecord> bundle;
  for (int item = 0; item < static_cast<int>(wins.size()); ++item) {
    const int opponent = item == 0 ? 1 : 0;
    for (int c = 0; c < wins[item]; ++c) {
      bundle.push_back({std::min(item, opponent), std::max(item, opponent), item});
    }
  }
  return bundle;
}

struct CountDelta {
  double l1 = 0.0;
  double max_coord = 0.0;
};

CountDelta Delta(const WinCounts& a, const WinCounts& b) {
  CountDelta d;
  for (int i = 0; i < a.n(); ++i) {
    const double x = std::abs(static_cast<double>(a.wins[i] - b.wins[i]));
    d.l1 += x;
    d.max_coord = std::max(d.max_coord, x);
  }
  return d;
}

uint64_t SetKey(const std::vector<int>& items) {
  uint64_t key = 0;
  for (int i : items) key |= uint64_t{1} << i;
  return key;
}

Histogram Replay(const CountMechanism& mechanism, const WinCounts& counts,
                 size_t samples, uint64_t seed) {
  if (counts.n() > 64) throw ParameterError("epsilon audit supports n <= 64");
  Rng rng(seed);
  Histogram h;
  for (size_t s = 0; s < samples; ++s) ++h[SetKey(mechanism(counts, rng))];
  return h;
}

// Both histograms come from the same number of replays, so raw counts
// stand in for probabilities.
EpsilonEstimate Compare(const Histogram& base, const Histogram& variant,
                        size_t floor) {
  EpsilonEstimate out;
  if (base.size() == 1 && variant.size() == 1) {
    // Deterministic on both sides.
    if (base.begin()->first != variant.begin()->first) {
      out.status = EpsilonStatus::kNonPrivate;
      out.value = std::numeric_limits<double>::infinity();
    } else {
      out.status = EpsilonStatus::kOk;
      out.outcomes_compared = 1;
    }
    return out;
  }
  for (const auto& [key, count] : base) {
    auto it = variant.find(key);
    if (it == variant.end() || count < floor || it->second < floor) continue;
    ++out.outcomes_compared;
    out.value = std::max(out.value, std::abs(std::log(static_cast<double>(count) /
                                                      it->second)));
  }
  out.status = out.outcomes_compared > 0 ? EpsilonStatus::kOk
                                         : EpsilonStatus::kInconclusive;
  return out;
}

void CheckSamples(const EpsilonEstimatorConfig& config) {
  if (config.samples < kMinAuditSamples) {
    throw ParameterError("epsilon estimation needs at least 100000 samples");
  }
}

template <typename Pair>
AuditReport RunAudit(const std::vector<Pair>& pairs, const WinCounts& base,
                     int k, double epsilon, Regime regime, int L,
                     const AuditConfig& config) {
  AuditReport report;
  report.regime = RegimeName(regime);
  report.epsilon_declared = epsilon;
  report.samples = config.estimator.samples;
  report.pairs = pairs.size();
  try {
    const SensitivityReport s = SensitivityCheck(pairs);
    report.max_l1_sensitivity = s.max_l1;
    report.per_coordinate_max = s.max_per_coordinate;
  } catch (const SensitivityViolation& v) {
    report.sensitivity_ok = false;
    report.sensitivity_violation = v.what();
  }
  // Distinct variant count vectors, worst l1 change first.
  std::map<std::vector<int64_t>, double> variants;
  for (const auto& pair : pairs) {
    WinCounts c = CountWins(pair.variant);
    const double l1 = Delta(base, c).l1;
    if (!report.sensitivity_ok) {
      report.max_l1_sensitivity = std::max(report.max_l1_sensitivity, l1);
      report.per_coordinate_max =
          std::max(report.per_coordinate_max, Delta(base, c).max_coord);
    }
    variants.emplace(std::move(c.wins), l1);
  }
  std::vector<std::pair<double, std::vector<int64_t>>> ordered;
  for (auto& [wins, l1] : variants) {
    if (l1 > 0) ordered.emplace_back(l1, wins);
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  if (ordered.size() > config.max_variants) ordered.resize(config.max_variants);

  CheckSamples(config.estimator);
  const CountMechanism mech = NoisyTopKMechanism(k, epsilon, regime, L);
  const Histogram base_hist = Replay(mech, base, config.estimator.samples,
                                     DeriveSeed(config.seed, {0}));
  for (size_t v = 0; v < ordered.size(); ++v) {
    const Histogram h = Replay(mech, WinCounts{ordered[v].second},
                               config.estimator.samples,
                               DeriveSeed(config.seed, {v + 1}));
    const EpsilonEstimate e = Compare(base_hist, h, config.estimator.count_floor);
    if (e.status == EpsilonStatus::kNonPrivate) report.non_private = true;
    if (e.status != EpsilonStatus::kInconclusive) {
      report.epsilon_hat = std::max(report.epsilon_hat.value_or(0.0), e.value);
    }
  }
  return report;
}

}  // namespace

const char* AdjacencyKindName(AdjacencyKind kind) {
  switch (kind) {
    case AdjacencyKind::kEdgeFlip:
      return "edge-flip";
    case AdjacencyKind::kEdgeSwap:
      return "edge-swap";
    case AdjacencyKind::kUserReplacement:
      return "user-replacement";
  }
  return "unknown";
}

const char* EpsilonStatusName(EpsilonStatus status) {
  switch (status) {
    case EpsilonStatus::kOk:
      return "ok";
    case EpsilonStatus::kInconclusive:
      return "inconclusive";
    case EpsilonStatus::kNonPrivate:
      return "non-private";
  }
  return "unknown";
}

std::vector<EdgeAdjacentPair> EnumerateAdjacent(const EdgeDataset& data,
                                                size_t budget, uint64_t seed) {
  if (budget < 1) throw ParameterError("budget must be >= 1");
  const int n = data.n();
  std::vector<Edge> absent;
  {
    const std::set<Edge> present(data.graph.edges.begin(), data.graph.edges.end());
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!present.count({i, j})) absent.push_back({i, j});
      }
    }
  }
  const size_t flips = data.size();
  const size_t swaps_per_edge = 2 * absent.size();
  const size_t total = flips + flips * swaps_per_edge;
  std::vector<EdgeAdjacentPair> out;
  for (size_t idx : ChooseIndices(total, budget, seed)) {
    if (idx < flips) {
      out.push_back({data, FlipOutcome(data, idx), AdjacencyKind::kEdgeFlip});
      continue;
    }
    const size_t r = idx - flips;
    const size_t e = r / swaps_per_edge;
    const size_t a = (r % swaps_per_edge) / 2;
    const uint8_t outcome = static_cast<uint8_t>(r % 2);
    out.push_back({data, SwapEdge(data, e, absent[a], outcome),
                   AdjacencyKind::kEdgeSwap});
  }
  return out;
}

std::vector<UserAdjacentPair> EnumerateUserReplacements(
    const IndividualDataset& data, size_t budget, uint64_t seed) {
  if (budget < 1) throw ParameterError("budget must be >= 1");
  if (data.n < 2 || data.L < 1) return {};
  std::vector<std::vector<int>> comps;
  std::vector<int> scratch;
  Compositions(data.n, data.L, scratch, comps);
  const size_t total = static_cast<size_t>(data.m()) * comps.size();
  std::vector<UserAdjacentPair> out;
  for (size_t idx : ChooseIndices(total, budget, seed)) {
    const size_t user = idx / comps.size();
    std::vector<ComparisonRecord> bundle = BundleFor(comps[idx % comps.size()]);
    if (bundle == data.users[user]) continue;
    IndividualDataset variant = data;
    variant.users[user] = std::move(bundle);
    out.push_back({data, std::move(variant), AdjacencyKind::kUserReplacement});
  }
  return out;
}

SensitivityReport SensitivityCheck(const std::vector<EdgeAdjacentPair>& pairs) {
  SensitivityReport r;
  r.pairs = pairs.size();
  for (size_t p = 0; p < pairs.size(); ++p) {
    const CountDelta d = Delta(CountWins(pairs[p].base), CountWins(pairs[p].variant));
    r.max_l1 = std::max(r.max_l1, d.l1);
    r.max_per_coordinate = std::max(r.max_per_coordinate, d.max_coord);
    if (d.l1 > 2.0) {
      throw SensitivityViolation(
          std::string(AdjacencyKindName(pairs[p].kind)) + " pair " +
              std::to_string(p) + " moves win counts by l1 = " +
              std::to_string(d.l1) + " > 2",
          p);
    }
  }
  return r;
}

SensitivityReport SensitivityCheck(const std::vector<UserAdjacentPair>& pairs) {
  SensitivityReport r;
  r.pairs = pairs.size();
  for (size_t p = 0; p < pairs.size(); ++p) {
    const CountDelta d = Delta(CountWins(pairs[p].base), CountWins(pairs[p].variant));
    r.max_l1 = std::max(r.max_l1, d.l1);
    r.max_per_coordinate = std::max(r.max_per_coordinate, d.max_coord);
    if (d.max_coord > pairs[p].base.L) {
      throw SensitivityViolation(
          "user-replacement pair " + std::to_string(p) +
              " moves one win count by " + std::to_string(d.max_coord) +
              " > L = " + std::to_string(pairs[p].base.L),
          p);
    }
  }
  return r;
}

CountMechanism NoisyTopKMechanism(int k, double epsilon, Regime regime, int L) {
  const double scale = CountNoiseScale(epsilon, regime, L);
  return [k, scale](const WinCounts& counts, Rng& rng) {
    return TopKOfValues(PerturbCounts(counts, scale, rng).values, k);
  };
}

EpsilonEstimate EstimateEpsilon(const CountMechanism& mechanism,
                                const WinCounts& base,
                                const WinCounts& variant,
                                const EpsilonEstimatorConfig& config,
                                uint64_t seed) {
  CheckSamples(config);
  if (base.n() != variant.n()) throw ParameterError("count vectors differ in length");
  const Histogram hb = Replay(mechanism, base, config.samples, DeriveSeed(seed, {0}));
  const Histogram hv = Replay(mechanism, variant, config.samples, DeriveSeed(seed, {1}));
  return Compare(hb, hv, config.count_floor);
}

AuditReport AuditEdgeCounts(const EdgeDataset& data, int k, double epsilon,
                            const AuditConfig& config) {
  const auto pairs = EnumerateAdjacent(data, config.enumeration_budget, config.seed);
  return RunAudit(pairs, CountWins(data), k, epsilon, Regime::kEdge, 1, config);
}

AuditReport AuditUserCounts(const IndividualDataset& data, int k,
                            double epsilon, const AuditConfig& config) {
  const auto pairs =
      EnumerateUserReplacements(data, config.enumeration_budget, config.seed);
  return RunAudit(pairs, CountWins(data), k, epsilon, Regime::kIndividual,
                  data.L, config);
}

EdgeDataset DefaultEdgeAuditInstance() {
  EdgeDataset d;
  d.graph.n = 4;
  d.graph.p = 1.0;
  // (2, 3) is left out. Outcomes give wins (2, 1, 1, 1).
  d.graph.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}};
  d.outcomes = {1, 0, 1, 1, 0};
  return d;
}

IndividualDataset DefaultUserAuditInstance(int L, uint64_t seed) {
  return SampleIndividual(4, 6, L, ProbMatrix(4), seed);
}

}  // namespace dprank
