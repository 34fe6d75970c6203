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

// Command-line front end.
//
//   dprank simulate    --config exp.json [--out rows.csv] [--workers 8]
//   dprank estimate    --data cmp.csv --mode individual --epsilon 1
//   dprank rank        --data cmp.csv --mode edge --epsilon 2.5 --k 3
//   dprank audit       --mode edge --epsilon 1 --samples 1000000
//   dprank ingest-rank --data cmp.csv --epsilons 0.5,1,inf --trials 200
//   dprank synth       --out sample.csv
//
// DPRANK_SEED sets the default seed; --seed (or master_seed in a config)
// overrides it. Epsilon accepts "inf" for the non-private variants.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dprank/csv_io.h"
#include "dprank/errors.h"
#include "dprank/experiment.h"
#include "dprank/noisy_counts.h"
#include "dprank/privacy_audit.h"
#include "dprank/private_mle.h"
#include "nlohmann/json.hpp"

namespace {

using nlohmann::json;
using namespace dprank;

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitSolver = 4;

uint64_t EnvSeed() {
  const char* env = std::getenv("DPRANK_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw ParameterError("DPRANK_SEED is not an integer");
  return v;
}

// Writes to `path`, or stdout when empty.
void Emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
}

json JsonNumber(double v) {
  return std::isfinite(v) ? json(v) : json(FormatDouble(v));
}

std::vector<std::string> Names(const std::vector<std::string>& names,
                               const std::vector<int>& items) {
  std::vector<std::string> out;
  for (int i : items) out.push_back(names[i]);
  return out;
}

struct LoadedData {
  Regime regime = Regime::kEdge;
  std::optional<EdgeDataset> edge;
  std::optional<IndividualDataset> indiv;
  std::vector<std::string> item_names;
  std::vector<std::string> dropped_users;
};

LoadedData Load(const std::string& path, const std::string& mode,
                const std::string& policy) {
  LoadedData d;
  d.regime = ParseRegime(mode);
  if (d.regime == Regime::kEdge) {
    EdgeIngest in = IngestEdgeFile(path);
    d.item_names = in.item_names;
    d.edge = std::move(in.data);
  } else {
    IndividualIngest in = IngestIndividualFile(path, ParseLPolicy(policy));
    d.item_names = in.data.item_names;
    d.dropped_users = in.dropped_users;
    d.indiv = std::move(in.data);
  }
  return d;
}

int RunSimulate(const std::string& config_path, const std::string& out,
                int workers, std::optional<uint64_t> seed) {
  std::ifstream in(config_path);
  if (!in) throw ParameterError("cannot open " + config_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParameterError(config_path + ": " + e.what());
  }
  if (j.is_object() && !j.contains("master_seed")) j["master_seed"] = EnvSeed();
  ExperimentConfig c = ConfigFromJson(j);
  if (seed) c.master_seed = *seed;
  if (workers > 0) c.workers = workers;
  if (!out.empty()) c.output_path = out;
  const std::vector<TrialRecord> rows = RunExperiment(c);
  if (c.output_path.empty()) WriteRecordsCsv(rows, std::cout);
  std::cerr << "dprank: " << rows.size() << " rows\n";
  return 0;
}

int RunEstimate(const LoadedData& d, double epsilon, uint64_t seed,
                const std::string& out, const std::string& sidecar) {
  const LinkFunction link = LogisticLink();
  std::optional<PrivacyCalibration> calib;
  PrivateEstimate est;
  if (d.edge) {
    calib = CalibrateEdge(epsilon, d.edge->n(), d.edge->graph.p, link);
    est = Estimate(*d.edge, *calib, link, SolverConfig{}, seed);
  } else {
    calib = CalibrateIndividual(epsilon, d.indiv->n, d.indiv->m(), d.indiv->L, link);
    est = Estimate(*d.indiv, *calib, link, SolverConfig{}, seed);
  }
  json result;
  result["regime"] = RegimeName(d.regime);
  result["epsilon"] = JsonNumber(epsilon);
  result["lambda"] = calib->lambda();
  result["gamma"] = calib->gamma();
  result["items"] = d.item_names;
  result["theta"] = std::vector<double>(est.scores.theta.data(),
                                        est.scores.theta.data() + est.scores.size());
  result["ranking"] = Names(d.item_names, OrderByDescending(est.scores.theta));
  Emit(out, result.dump(2) + "\n");

  json diag;
  diag["iterations"] = est.iterations;
  diag["gradient_norm"] = est.gradient_norm;
  diag["tol"] = est.tol;
  diag["floor_binding"] = est.floor_binding;
  if (calib->warning()) diag["warning"] = *calib->warning();
  if (sidecar.empty()) {
    std::cerr << diag.dump() << "\n";
  } else {
    Emit(sidecar, diag.dump(2) + "\n");
  }
  return 0;
}

int RunRank(const LoadedData& d, double epsilon, int k, uint64_t seed,
            const std::string& out) {
  const WinCounts counts = d.edge ? CountWins(*d.edge) : CountWins(*d.indiv);
  const int L = d.indiv ? d.indiv->L : 1;
  json result;
  result["regime"] = RegimeName(d.regime);
  result["epsilon"] = JsonNumber(epsilon);
  result["k"] = k;
  result["noise_scale"] = CountNoiseScale(epsilon, d.regime, L);
  result["items"] =
      Names(d.item_names, NoisyTopK(counts, k, epsilon, d.regime, L, seed));
  Emit(out, result.dump(2) + "\n");
  return 0;
}

int RunAudit(const std::string& mode, double epsilon, size_t samples, int k,
             int L, uint64_t seed, const std::string& out) {
  AuditConfig cfg;
  cfg.estimator.samples = samples;
  cfg.seed = seed;
  const AuditReport r =
      ParseRegime(mode) == Regime::kEdge
          ? AuditEdgeCounts(DefaultEdgeAuditInstance(), k, epsilon, cfg)
          : AuditUserCounts(DefaultUserAuditInstance(L), k, epsilon, cfg);
  json j;
  j["regime"] = r.regime;
  j["max_l1_sensitivity"] = r.max_l1_sensitivity;
  j["per_coordinate_max"] = r.per_coordinate_max;
  j["epsilon_hat"] = r.epsilon_hat ? JsonNumber(*r.epsilon_hat) : json(nullptr);
  j["epsilon_declared"] = JsonNumber(r.epsilon_declared);
  j["samples"] = r.samples;
  j["pairs"] = r.pairs;
  j["non_private"] = r.non_private;
  j["sensitivity_ok"] = r.sensitivity_ok;
  if (!r.sensitivity_ok) j["sensitivity_violation"] = r.sensitivity_violation;
  Emit(out, j.dump(2) + "\n");
  return 0;
}

int RunIngestRank(const std::string& path, const std::string& policy,
                  const std::vector<std::string>& eps_text, int trials,
                  uint64_t seed, const std::string& out) {
  const IndividualIngest in = IngestIndividualFile(path, ParseLPolicy(policy));
  for (const auto& u : in.dropped_users) {
    std::cerr << "dprank: dropped user " << u << "\n";
  }
  std::vector<double> epsilons;
  for (const auto& e : eps_text) epsilons.push_back(ParseDouble(e));
  const std::vector<TrialRecord> rows =
      RealDataEval(in.data, epsilons, trials, seed, LogisticLink());
  std::ostringstream csv;
  WriteRecordsCsv(rows, csv);
  Emit(out, csv.str());
  return 0;
}

int RunSynth(int users, uint64_t seed, const std::string& out) {
  // Six items, every pair once per user: the shape of an exhaustive survey.
  static const std::vector<std::string> kItems = {
      "London", "Paris", "Milano", "St. Gallen", "Barcelona", "Stockholm"};
  Vector theta(6);
  theta << 0.9, 0.6, 0.2, -0.1, -0.5, -1.1;
  IndividualDataset d = SampleIndividualExhaustive(
      6, users, RhoFromTheta({theta}, LogisticLink()), seed);
  d.item_names = kItems;
  for (int u = 0; u < users; ++u) {
    std::ostringstream id;
    id << 's' << std::setw(3) << std::setfill('0') << u + 1;
    d.user_ids.push_back(id.str());
  }
  std::ostringstream csv;
  WriteIndividualCsv(d, csv);
  Emit(out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private ranking from pairwise comparisons"};
  app.require_subcommand(1);

  std::string config, out, data, mode = "individual", policy = "strict",
                                 epsilon_text, sidecar;
  std::vector<std::string> epsilons;
  std::optional<uint64_t> seed;
  int workers = 0, k = 2, trials = 200, L = 5, users = 303;
  size_t samples = 1000000;

  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Seed (default: $DPRANK_SEED, else 0)");
  };
  auto add_data = [&](CLI::App* sub) {
    sub->add_option("--data", data, "Comparison CSV")->required();
    sub->add_option("--mode", mode, "edge | individual")->required();
    sub->add_option("--l-policy", policy, "strict | pad-skip (individual)");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "Run an experiment grid");
  simulate->add_option("--config", config, "Experiment JSON")->required();
  simulate->add_option("--out", out, "Output CSV (overrides output_path)");
  simulate->add_option("--workers", workers, "Worker threads")
      ->check(CLI::PositiveNumber);
  add_seed(simulate);

  CLI::App* estimate = app.add_subcommand("estimate", "Private MLE scores");
  add_data(estimate);
  estimate->add_option("--epsilon", epsilon_text, "Privacy level or inf")
      ->required();
  estimate->add_option("--out", out, "Output JSON (default stdout)");
  estimate->add_option("--sidecar", sidecar,
                       "Diagnostics JSON (default: one line on stderr)");
  add_seed(estimate);

  CLI::App* rank = app.add_subcommand("rank", "Noisy-count top-k set");
  add_data(rank);
  rank->add_option("--epsilon", epsilon_text, "Privacy level or inf")->required();
  rank->add_option("--k", k, "Set size")->required();
  rank->add_option("--out", out, "Output JSON (default stdout)");
  add_seed(rank);

  CLI::App* audit = app.add_subcommand("audit", "Empirical privacy audit");
  audit->add_option("--mode", mode, "edge | individual")->required();
  audit->add_option("--epsilon", epsilon_text, "Declared privacy level")
      ->required();
  audit->add_option("--samples", samples, "Replays per side")->required();
  audit->add_option("--k", k, "Top-k size");
  audit->add_option("--L", L, "Records per user (individual)");
  audit->add_option("--out", out, "Output JSON (default stdout)");
  add_seed(audit);

  CLI::App* ingest = app.add_subcommand(
      "ingest-rank", "Rank differences on a real individual dataset");
  ingest->add_option("--data", data, "Comparison CSV")->required();
  ingest->add_option("--l-policy", policy, "strict | pad-skip");
  ingest->add_option("--epsilons", epsilons, "e.g. 0.5,1,inf")
      ->required()
      ->delimiter(',');
  ingest->add_option("--trials", trials, "Trials per epsilon");
  ingest->add_option("--out", out, "Output CSV (default stdout)");
  add_seed(ingest);

  CLI::App* synth = app.add_subcommand("synth", "Write a synthetic survey file");
  synth->add_option("--users", users, "Respondents")->check(CLI::PositiveNumber);
  synth->add_option("--out", out, "Output CSV (default stdout)");
  add_seed(synth);

  CLI11_PARSE(app, argc, argv);

  try {
    const uint64_t s = seed.value_or(EnvSeed());
    const double epsilon = epsilon_text.empty() ? 0.0 : ParseDouble(epsilon_text);
    if (simulate->parsed()) return RunSimulate(config, out, workers, seed);
    if (estimate->parsed()) {
      return RunEstimate(Load(data, mode, policy), epsilon, s, out, sidecar);
    }
    if (rank->parsed()) return RunRank(Load(data, mode, policy), epsilon, k, s, out);
    if (audit->parsed()) return RunAudit(mode, epsilon, samples, k, L, s, out);
    if (ingest->parsed()) return RunIngestRank(data, policy, epsilons, trials, s, out);
    if (synth->parsed()) return RunSynth(users, s, out);
  } catch (const ParseError& e) {
    std::cerr << "dprank: " << data << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const AdjacencyModelError& e) {
    std::cerr << "dprank: " << e.what() << "\n";
    return kExitInput;
  } catch (const ConvergenceError& e) {
    std::cerr << "dprank: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "dprank: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
