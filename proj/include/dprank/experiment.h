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

#ifndef DPRANK_EXPERIMENT_H_
#define DPRANK_EXPERIMENT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dprank/data_model.h"
#include "dprank/private_mle.h"
#include "nlohmann/json.hpp"

namespace dprank {

inline constexpr const char* kParametric = "parametric";
inline constexpr const char* kNonparametric = "nonparametric";

// One simulation sweep. Presets "exp1".."exp7" fill in the regime and grid;
// any field given explicitly overrides the preset. "custom" requires the
// regime and grid to be given.
struct ExperimentConfig {
  std::string preset = "custom";
  Regime regime = Regime::kEdge;
  std::vector<int> n;
  std::vector<double> p;  // edge regime
  std::vector<int> m;     // individual regime
  std::vector<double> epsilon;
  int trials = 50;
  int L = 5;
  uint64_t master_seed = 0;
  std::vector<std::string> algorithms = {kParametric, kNonparametric};
  std::string output_path;
  int workers = 1;
  // Top group of the synthetic truth has size k (true) or k - 1 (false).
  bool top_group_inclusive = true;
  std::string link = "logistic";
  double c0 = 1.0;
};

// Throws ParameterError for unknown presets.
ExperimentConfig PresetConfig(const std::string& preset);

// Builds a config from JSON of the form
//   {"preset": "exp1", "grid": {"n": [...], "p": [...], "m": [...],
//    "epsilon": [0.5, "inf"]}, "trials": 50, "L": 5, "master_seed": 1,
//    "algorithms": ["parametric", "nonparametric"], "output_path": "x.csv"}
// plus optional "regime", "workers", "top_group_inclusive", "link", "c0".
ExperimentConfig ConfigFromJson(const nlohmann::json& j);

// Throws ParameterError when the config cannot be run.
void ValidateConfig(const ExperimentConfig& config);

// One long-format result row.
struct TrialRecord {
  std::string experiment;
  std::string algorithm;
  std::optional<int> n;
  std::optional<double> p;
  std::optional<int> m;
  std::optional<int> L;
  std::optional<double> epsilon;
  int trial = 0;
  uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
};

inline constexpr const char* kTrialHeader =
    "experiment,algorithm,n,p,m,L,epsilon,trial,seed,metric,value";

// Metric names emitted per trial.
const std::vector<std::string>& ParametricMetrics();
const std::vector<std::string>& NonparametricMetrics();

// Sorts by (experiment, n, p, m, epsilon, trial, algorithm, metric).
void SortRecords(std::vector<TrialRecord>& records);

void WriteRecordsCsv(const std::vector<TrialRecord>& records, std::ostream& out);

// Substream seed of one trial: a hash of the master seed, experiment name,
// n, p (edge) or m (individual), epsilon and trial index.
uint64_t TrialSeed(uint64_t master_seed, const std::string& experiment, int n,
                   double p_or_m, double epsilon, int trial);

// Runs every (grid cell, trial), in parallel over config.workers threads.
// Output is sorted and identical for any worker count. When output_path is
// set the CSV is written there too.
std::vector<TrialRecord> RunExperiment(const ExperimentConfig& config);

// Differences between private and non-private rankings of a real dataset.
// References are the ridge MLE ordering (epsilon = inf) and the exact
// win-count ordering. For each epsilon and trial, both private algorithms
// (individual regime) are run and "mean_abs_rank_diff" rows emitted.
std::vector<TrialRecord> RealDataEval(const IndividualDataset& data,
                                      const std::vector<double>& epsilons,
                                      int trials, uint64_t seed,
                                      const LinkFunction& link);

}  // namespace dprank

#endif  // DPRANK_EXPERIMENT_H_
