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

#include "dprank/experiment.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

#include "dprank/csv_io.h"
#include "dprank/errors.h"
#include "dprank/likelihood.h"
#include "dprank/metrics.h"
#include "dprank/noisy_counts.h"
#include "dprank/rng.h"

namespace dprank {
namespace {

using nlohmann::json;

const std::vector<double> kPresetEpsilons = {0.5, 1.0, 2.5, kNonPrivate};

// One point of the parameter grid.
struct Cell {
  int n = 0;
  double p = 1.0;
  int m = 0;
  double epsilon = kNonPrivate;
};

double ParseEpsilonJson(const json& v) {
  if (v.is_string()) return ParseDouble(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw ParameterError("epsilon entries must be numbers or \"inf\"");
}

std::vector<Cell> Cells(const ExperimentConfig& c) {
  std::vector<Cell> cells;
  for (int n : c.n) {
    if (c.regime == Regime::kEdge) {
      for (double p : c.p) {
        for (double eps : c.epsilon) cells.push_back({n, p, 0, eps});
      }
    } else {
      for (int m : c.m) {
        for (double eps : c.epsilon) cells.push_back({n, 0.0, m, eps});
      }
    }
  }
  return cells;
}

TrialRecord BaseRecord(const ExperimentConfig& c, const Cell& cell, int trial,
                       uint64_t seed) {
  TrialRecord r;
  r.experiment = c.preset;
  r.n = cell.n;
  if (c.regime == Regime::kEdge) {
    r.p = cell.p;
  } else {
    r.m = cell.m;
    r.L = c.L;
  }
  r.epsilon = cell.epsilon;
  r.trial = trial;
  r.seed = seed;
  return r;
}

bool Wants(const ExperimentConfig& c, const char* algorithm) {
  return std::find(c.algorithms.begin(), c.algorithms.end(), algorithm) !=
         c.algorithms.end();
}

std::vector<TrialRecord> RunTrial(const ExperimentConfig& c,
                                  const LinkFunction& link, const Cell& cell,
                                  int trial) {
  const double p_or_m = c.regime == Regime::kEdge ? cell.p : cell.m;
  const uint64_t seed =
      TrialSeed(c.master_seed, c.preset, cell.n, p_or_m, cell.epsilon, trial);
  const int k = std::max(1, cell.n / 4);
  const LatentScores truth =
      GenerateTheta(cell.n, k, DeriveSeed(seed, {1}), c.top_group_inclusive);
  const ProbMatrix rho = RhoFromTheta(truth, link);
  const std::vector<int> true_set = TrueTopK(Tau(rho), k);

  std::optional<EdgeDataset> edge;
  std::optional<IndividualDataset> indiv;
  if (c.regime == Regime::kEdge) {
    edge = SampleEdgeOutcomes(SampleErGraph(cell.n, cell.p, DeriveSeed(seed, {2})),
                              rho, DeriveSeed(seed, {3}));
  } else {
    indiv = SampleIndividual(cell.n, cell.m, c.L, rho, DeriveSeed(seed, {2}));
  }

  std::vector<TrialRecord> rows;
  auto emit = [&](const char* algorithm, const std::string& metric,
                  double value) {
    TrialRecord r = BaseRecord(c, cell, trial, seed);
    r.algorithm = algorithm;
    r.metric = metric;
    r.value = value;
    rows.push_back(std::move(r));
  };

  if (Wants(c, kParametric)) {
    const uint64_t noise_seed = DeriveSeed(seed, {4});
    PrivateEstimate est =
        edge ? Estimate(*edge, CalibrateEdge(cell.epsilon, cell.n, cell.p, link, c.c0),
                        link, SolverConfig{}, noise_seed)
             : Estimate(*indiv,
                        CalibrateIndividual(cell.epsilon, cell.n, cell.m, c.L,
                                            link, c.c0),
                        link, SolverConfig{}, noise_seed);
    const std::vector<int> set = RankFromScores(est.scores, k);
    emit(kParametric, "linf_rel_log_error", LinfRelLogError(est.scores, truth));
    emit(kParametric, "l2_rel_log_error", L2RelLogError(est.scores, truth));
    emit(kParametric, "linf_rel_log_error_centered",
         LinfRelLogErrorCentered(est.scores, truth));
    emit(kParametric, "l2_rel_log_error_centered",
         L2RelLogErrorCentered(est.scores, truth));
    emit(kParametric, "topk_overlap_loss", TopKOverlapLoss(set, true_set, k));
    emit(kParametric, "hamming_distance", HammingSets(set, true_set));
    emit(kParametric, "theta_true_linf", truth.theta.cwiseAbs().maxCoeff());
  }
  if (Wants(c, kNonparametric)) {
    const WinCounts counts = edge ? CountWins(*edge) : CountWins(*indiv);
    const std::vector<int> set = NoisyTopK(counts, k, cell.epsilon, c.regime,
                                           edge ? 1 : c.L, DeriveSeed(seed, {5}));
    emit(kNonparametric, "topk_overlap_loss", TopKOverlapLoss(set, true_set, k));
    emit(kNonparametric, "hamming_distance", HammingSets(set, true_set));
  }
  return rows;
}

std::string OptionalInt(const std::optional<int>& v) {
  return v ? std::to_string(*v) : std::string();
}

std::string OptionalDouble(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

}  // namespace

ExperimentConfig PresetConfig(const std::string& preset) {
  ExperimentConfig c;
  c.preset = preset;
  c.epsilon = kPresetEpsilons;
  if (preset == "exp1") {
    c.n = {50, 100, 200, 400};
    c.p = {1.0};
  } else if (preset == "exp2" || preset == "exp3") {
    c.n = {300};
    c.p = {0.25, 0.5, 0.75, 1.0};
  } else if (preset == "exp4") {
    c.n = {50, 100, 200};
    c.p = {1.0};
  } else if (preset == "exp5") {
    c.regime = Regime::kIndividual;
    c.n = {8, 16, 32, 64};
    c.m = {1000};
  } else if (preset == "exp6" || preset == "exp7") {
    c.regime = Regime::kIndividual;
    c.n = {16};
    c.m = {250, 500, 1000, 2000};
  } else if (preset == "custom") {
    c.epsilon.clear();
  } else {
    throw ParameterError("unknown preset '" + preset + "' (exp1..exp7, custom)");
  }
  return c;
}

ExperimentConfig ConfigFromJson(const json& j) {
  if (!j.is_object()) throw ParameterError("config must be a JSON object");
  ExperimentConfig c = PresetConfig(j.value("preset", std::string("custom")));
  try {
    if (j.contains("regime")) c.regime = ParseRegime(j.at("regime").get<std::string>());
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      if (g.contains("n")) c.n = g.at("n").get<std::vector<int>>();
      if (g.contains("p")) c.p = g.at("p").get<std::vector<double>>();
      if (g.contains("m")) c.m = g.at("m").get<std::vector<int>>();
      if (g.contains("epsilon")) {
        c.epsilon.clear();
        for (const json& v : g.at("epsilon")) c.epsilon.push_back(ParseEpsilonJson(v));
      }
    }
    if (j.contains("trials")) c.trials = j.at("trials").get<int>();
    if (j.contains("L")) c.L = j.at("L").get<int>();
    if (j.contains("master_seed")) c.master_seed = j.at("master_seed").get<uint64_t>();
    if (j.contains("algorithms")) {
      c.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    }
    if (j.contains("output_path")) c.output_path = j.at("output_path").get<std::string>();
    if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    if (j.contains("top_group_inclusive")) {
      c.top_group_inclusive = j.at("top_group_inclusive").get<bool>();
    }
    if (j.contains("link")) c.link = j.at("link").get<std::string>();
    if (j.contains("c0")) c.c0 = j.at("c0").get<double>();
  } catch (const json::exception& e) {
    throw ParameterError(std::string("bad config field: ") + e.what());
  }
  ValidateConfig(c);
  return c;
}

void ValidateConfig(const ExperimentConfig& c) {
  if (c.trials < 1) throw ParameterError("trials must be >= 1");
  if (c.workers < 1) throw ParameterError("workers must be >= 1");
  if (c.n.empty()) throw ParameterError("grid.n is empty");
  for (int n : c.n) {
    if (n < 2) throw ParameterError("every n must be >= 2");
  }
  if (c.epsilon.empty()) throw ParameterError("grid.epsilon is empty");
  for (double e : c.epsilon) {
    if (!(e > 0.0)) throw ParameterError("every epsilon must be > 0 or inf");
  }
  if (c.regime == Regime::kEdge) {
    if (c.p.empty()) throw ParameterError("grid.p is empty");
    for (double p : c.p) {
      if (!(p > 0.0 && p <= 1.0)) throw ParameterError("every p must lie in (0, 1]");
    }
  } else {
    if (c.m.empty()) throw ParameterError("grid.m is empty");
    for (int m : c.m) {
      if (m < 1) throw ParameterError("every m must be >= 1");
    }
    if (c.L < 1) throw ParameterError("L must be >= 1");
  }
  if (c.algorithms.empty()) throw ParameterError("no algorithms selected");
  for (const auto& a : c.algorithms) {
    if (a != kParametric && a != kNonparametric) {
      throw ParameterError("unknown algorithm '" + a + "'");
    }
  }
  if (!(c.c0 > 0.0)) throw ParameterError("c0 must be positive");
  LinkByName(c.link);
}

const std::vector<std::string>& ParametricMetrics() {
  static const std::vector<std::string> kMetrics = {
      "linf_rel_log_error", "l2_rel_log_error", "linf_rel_log_error_centered",
      "l2_rel_log_error_centered", "topk_overlap_loss", "hamming_distance",
      "theta_true_linf"};
  return kMetrics;
}

const std::vector<std::string>& NonparametricMetrics() {
  static const std::vector<std::string> kMetrics = {"topk_overlap_loss",
                                                    "hamming_distance"};
  return kMetrics;
}

void SortRecords(std::vector<TrialRecord>& records) {
  auto key = [](const TrialRecord& r) {
    return std::tie(r.experiment, r.n, r.p, r.m, r.epsilon, r.trial, r.algorithm,
                    r.metric);
  };
  std::stable_sort(records.begin(), records.end(),
                   [&](const TrialRecord& a, const TrialRecord& b) {
                     return key(a) < key(b);
                   });
}

void WriteRecordsCsv(const std::vector<TrialRecord>& records, std::ostream& out) {
  out << kTrialHeader << '\n';
  for (const TrialRecord& r : records) {
    out << CsvField(r.experiment) << ',' << CsvField(r.algorithm) << ','
        << OptionalInt(r.n) << ',' << OptionalDouble(r.p) << ','
        << OptionalInt(r.m) << ',' << OptionalInt(r.L) << ','
        << OptionalDouble(r.epsilon) << ',' << r.trial << ',' << r.seed << ','
        << CsvField(r.metric) << ',' << FormatDouble(r.value) << '\n';
  }
}

uint64_t TrialSeed(uint64_t master_seed, const std::string& experiment, int n,
                   double p_or_m, double epsilon, int trial) {
  return DeriveSeed(master_seed,
                    {HashString(experiment.c_str()), static_cast<uint64_t>(n),
                     std::bit_cast<uint64_t>(p_or_m),
                     std::bit_cast<uint64_t>(epsilon),
                     static_cast<uint64_t>(trial)});
}

std::vector<TrialRecord> RunExperiment(const ExperimentConfig& config) {
  ValidateConfig(config);
  const LinkFunction link = LinkByName(config.link);
  std::ofstream out;
  if (!config.output_path.empty()) {
    out.open(config.output_path, std::ios::binary);
    if (!out) throw ParameterError("cannot write " + config.output_path);
  }

  const std::vector<Cell> cells = Cells(config);
  const size_t tasks = cells.size() * config.trials;
  std::vector<std::vector<TrialRecord>> results(tasks);
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (size_t t = next++; t < tasks; t = next++) {
      try {
        results[t] = RunTrial(config, link, cells[t / config.trials],
                              static_cast<int>(t % config.trials));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = tasks;
      }
    }
  };
  const int threads =
      static_cast<int>(std::min<size_t>(config.workers, std::max<size_t>(tasks, 1)));
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<TrialRecord> records;
  for (auto& r : results) {
    std::move(r.begin(), r.end(), std::back_inserter(records));
  }
  SortRecords(records);
  if (out.is_open()) {
    WriteRecordsCsv(records, out);
    if (!out) throw ParameterError("failed writing " + config.output_path);
  }
  return records;
}

std::vector<TrialRecord> RealDataEval(const IndividualDataset& data,
                                      const std::vector<double>& epsilons,
                                      int trials, uint64_t seed,
                                      const LinkFunction& link) {
  if (trials < 1) throw ParameterError("trials must be >= 1");
  const AggregatedCounts agg = Aggregate(data);
  const WinCounts counts = CountWins(data);
  const int n = data.n, m = data.m(), L = data.L;

  const auto reference_calib = CalibrateIndividual(kNonPrivate, n, m, L, link);
  const std::vector<int> ref_parametric = OrderByDescending(
      Estimate(agg, reference_calib, link, SolverConfig{}, 0).scores.theta);
  const std::vector<int> ref_counting =
      NoisyFullRanking(counts, kNonPrivate, Regime::kIndividual, L, 0);

  std::vector<TrialRecord> rows;
  for (double eps : epsilons) {
    const auto calib = CalibrateIndividual(eps, n, m, L, link);
    for (int t = 0; t < trials; ++t) {
      const uint64_t s = DeriveSeed(seed, {std::bit_cast<uint64_t>(eps),
                                           static_cast<uint64_t>(t)});
      TrialRecord base;
      base.experiment = "real_data";
      base.n = n;
      base.m = m;
      base.L = L;
      base.epsilon = eps;
      base.trial = t;
      base.seed = s;
      base.metric = "mean_abs_rank_diff";

      TrialRecord param = base;
      param.algorithm = kParametric;
      param.value = MeanAbsRankDiff(
          OrderByDescending(
              Estimate(agg, calib, link, SolverConfig{}, DeriveSeed(s, {1}))
                  .scores.theta),
          ref_parametric);
      rows.push_back(std::move(param));

      TrialRecord count = base;
      count.algorithm = kNonparametric;
      count.value = MeanAbsRankDiff(
          NoisyFullRanking(counts, eps, Regime::kIndividual, L, DeriveSeed(s, {2})),
          ref_counting);
      rows.push_back(std::move(count));
    }
  }
  SortRecords(rows);
  return rows;
}

}  // namespace dprank
