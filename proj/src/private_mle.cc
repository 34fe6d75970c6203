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

#include "dprank/private_mle.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "dprank/errors.h"
#include "dprank/rng.h"

namespace dprank {
namespace {

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0)) {
    throw ParameterError("epsilon must be positive (or inf for non-private)");
  }
}

// Fills in lambda, gamma, the binding flag and the range warning given the
// privacy floors. An infinite epsilon sends both floors to zero.
void FinishCalibration(double lambda_floor, double gamma_floor,
                       double utility_gamma, int n, double& lambda,
                       double& gamma, bool& floor_binding,
                       std::optional<std::string>& warning) {
  lambda = lambda_floor;
  floor_binding = gamma_floor > utility_gamma;
  gamma = std::max(gamma_floor, utility_gamma);
  const double limit = std::sqrt(std::log(static_cast<double>(n)));
  if (lambda > limit) {
    std::ostringstream msg;
    msg << "noise scale " << lambda << " exceeds sqrt(log n) = " << limit
        << "; the estimator is private but outside its accuracy regime";
    warning = msg.str();
  }
}

double ResolveTol(const SolverConfig& config, double gamma) {
  const double tol = config.tol.value_or(1e-8 * std::max(1.0, gamma));
  if (!(tol > 0.0)) throw ParameterError("solver tol must be positive");
  return tol;
}

double SupNorm(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

void CheckRegime(const PrivacyCalibration& calib, Regime expected) {
  if (calib.regime() != expected) {
    throw ParameterError(std::string("calibration is for the ") +
                         RegimeName(calib.regime()) +
                         " regime but the data is " + RegimeName(expected));
  }
}

PrivateEstimate Solve(const ObjectiveSpec& base, const PrivacyCalibration& calib,
                      const SolverConfig& solver, uint64_t seed) {
  Rng rng(seed);
  Vector w(base.n());
  for (int i = 0; i < base.n(); ++i) w[i] = rng.Laplace(calib.lambda());
  const ObjectiveSpec spec = base.WithPenalty(calib.gamma(), w);
  SolveResult solved = Minimize(spec, solver);
  PrivateEstimate out;
  out.scores.theta = std::move(solved.theta);
  out.w = std::move(w);
  out.iterations = solved.iterations;
  out.gradient_norm = solved.gradient_norm;
  out.tol = solved.tol;
  out.floor_binding = calib.floor_binding();
  return out;
}

}  // namespace

const char* RegimeName(Regime regime) {
  return regime == Regime::kEdge ? "edge" : "individual";
}

Regime ParseRegime(const std::string& name) {
  if (name == "edge") return Regime::kEdge;
  if (name == "individual") return Regime::kIndividual;
  throw ParameterError("unknown regime '" + name + "' (edge|individual)");
}

PrivacyCalibration CalibrateEdge(double epsilon, int n, double p,
                                 const LinkFunction& link, double c0) {
  CheckEpsilon(epsilon);
  if (n < 2) throw ParameterError("need at least 2 items");
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("p must lie in (0, 1]");
  PrivacyCalibration c;
  c.epsilon_ = epsilon;
  c.regime_ = Regime::kEdge;
  c.L_ = 1;
  const double utility = c0 * std::sqrt(n * p * std::log(static_cast<double>(n)));
  FinishCalibration(8.0 * link.kappa1 / epsilon, 4.0 * link.kappa2 / epsilon,
                    utility, n, c.lambda_, c.gamma_, c.floor_binding_,
                    c.warning_);
  return c;
}

PrivacyCalibration CalibrateIndividual(double epsilon, int n, int m, int L,
                                       const LinkFunction& link, double c0) {
  CheckEpsilon(epsilon);
  if (n < 2) throw ParameterError("need at least 2 items");
  if (m < 1) throw ParameterError("need at least one user");
  if (L < 1) throw ParameterError("L must be >= 1");
  PrivacyCalibration c;
  c.epsilon_ = epsilon;
  c.regime_ = Regime::kIndividual;
  c.L_ = L;
  const double degree = 2.0 * m * L / n;
  const double utility =
      c0 * std::sqrt(degree * std::log(static_cast<double>(n)));
  FinishCalibration(8.0 * L * link.kappa1 / epsilon,
                    8.0 * L * link.kappa2 / epsilon, utility, n, c.lambda_,
                    c.gamma_, c.floor_binding_, c.warning_);
  return c;
}

ConvergenceError::ConvergenceError(Vector last_iterate, double gradient_norm,
                                   int iterations)
    : std::runtime_error("solver did not reach tolerance after " +
                         std::to_string(iterations) +
                         " iterations; gradient sup-norm " +
                         std::to_string(gradient_norm)),
      last_iterate_(std::move(last_iterate)),
      gradient_norm_(gradient_norm),
      iterations_(iterations) {}

SolveResult Minimize(const ObjectiveSpec& spec, const SolverConfig& config) {
  if (config.max_iters < 1) throw ParameterError("max_iters must be >= 1");
  const double tol = ResolveTol(config, spec.gamma());
  const int n = spec.n();
  // Curvature of each term is at most kappa2 * weight, so this bounds the
  // Lipschitz constant of the gradient.
  const double smoothness =
      spec.gamma() + 2.0 * spec.link().kappa2 * spec.MaxWeightedDegree();
  const double fixed_step = smoothness > 0 ? 1.0 / smoothness : 1.0;

  Vector theta = Vector::Zero(n);
  Vector g = Gradient(theta, spec);
  double step = 1.0 / std::max(spec.gamma() + 0.5 * spec.MaxWeightedDegree(),
                               1e-12);
  int iter = 0;
  for (; iter < config.max_iters; ++iter) {
    if (SupNorm(g) <= tol) break;
    if (config.step_rule == StepRule::kFixed) {
      theta -= fixed_step * g;
      g = Gradient(theta, spec);
      continue;
    }
    // Backtracking on the directional derivative: shrink until the slope of
    // f along -g at the trial point is non-positive, i.e. the trial has not
    // passed the line minimum. This guarantees descent without comparing
    // nearly equal objective values.
    const double g_sq = g.squaredNorm();
    step *= 2.0;
    Vector trial;
    Vector g_trial;
    while (true) {
      trial = theta - step * g;
      g_trial = Gradient(trial, spec);
      if (g_trial.dot(g) >= 0.0 || step <= fixed_step) break;
      step *= 0.5;
    }
    if (!(g_sq > 0.0) || !trial.allFinite()) break;
    theta = std::move(trial);
    g = std::move(g_trial);
  }
  const double norm = SupNorm(g);
  if (!(norm <= tol)) throw ConvergenceError(theta, norm, iter);
  return SolveResult{std::move(theta), iter, norm, tol};
}

PrivateEstimate Estimate(const EdgeDataset& data,
                         const PrivacyCalibration& calib,
                         const LinkFunction& link, const SolverConfig& solver,
                         uint64_t seed) {
  CheckRegime(calib, Regime::kEdge);
  return Solve(ObjectiveSpec(data, link), calib, solver, seed);
}

PrivateEstimate Estimate(const IndividualDataset& data,
                         const PrivacyCalibration& calib,
                         const LinkFunction& link, const SolverConfig& solver,
                         uint64_t seed) {
  return Estimate(Aggregate(data), calib, link, solver, seed);
}

PrivateEstimate Estimate(const AggregatedCounts& data,
                         const PrivacyCalibration& calib,
                         const LinkFunction& link, const SolverConfig& solver,
                         uint64_t seed) {
  CheckRegime(calib, Regime::kIndividual);
  return Solve(ObjectiveSpec(data, link), calib, solver, seed);
}

std::vector<int> OrderByDescending(const Vector& values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] > values[b]; });
  return order;
}

std::vector<int> RankFromScores(const LatentScores& scores, int k) {
  if (k < 1 || k > scores.size()) {
    throw ParameterError("k must lie in [1, n], got " + std::to_string(k));
  }
  std::vector<int> order = OrderByDescending(scores.theta);
  order.resize(k);
  return order;
}

}  // namespace dprank
