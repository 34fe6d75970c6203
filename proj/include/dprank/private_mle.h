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

#ifndef DPRANK_PRIVATE_MLE_H_
#define DPRANK_PRIVATE_MLE_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dprank/data_model.h"
#include "dprank/likelihood.h"
#include "dprank/link.h"

namespace dprank {

// Passing this as epsilon selects the non-private estimator.
inline constexpr double kNonPrivate = std::numeric_limits<double>::infinity();

enum class Regime { kEdge, kIndividual };

const char* RegimeName(Regime regime);
// "edge" or "individual"; throws ParameterError otherwise.
Regime ParseRegime(const std::string& name);

// Noise scale and ridge coefficient for the objective-perturbation estimator.
//
// Instances only come from CalibrateEdge / CalibrateIndividual, which always
// satisfy the privacy requirement:
//   edge:        lambda >= 8 kappa1 / eps,   gamma >= 4 kappa2 / eps
//   individual:  lambda >= 8 L kappa1 / eps, gamma >= 8 L kappa2 / eps
// gamma is the larger of that floor and the utility choice
// c0 * sqrt(d log n), where d is the expected number of comparisons per item.
class PrivacyCalibration {
 public:
  double epsilon() const { return epsilon_; }
  double lambda() const { return lambda_; }
  double gamma() const { return gamma_; }
  Regime regime() const { return regime_; }
  int L() const { return L_; }
  // True when the privacy floor, not the utility term, determined gamma.
  bool floor_binding() const { return floor_binding_; }
  // Set when lambda exceeds sqrt(log n), outside the range where the error
  // bound for the estimator applies. The estimator is still private.
  const std::optional<std::string>& warning() const { return warning_; }

 private:
  friend PrivacyCalibration CalibrateEdge(double, int, double,
                                          const LinkFunction&, double);
  friend PrivacyCalibration CalibrateIndividual(double, int, int, int,
                                                const LinkFunction&, double);
  PrivacyCalibration() = default;

  double epsilon_ = kNonPrivate;
  double lambda_ = 0.0;
  double gamma_ = 0.0;
  Regime regime_ = Regime::kEdge;
  int L_ = 1;
  bool floor_binding_ = false;
  std::optional<std::string> warning_;
};

// Edge-DP calibration for n items compared with probability p.
// Throws ParameterError unless epsilon > 0, n >= 2, 0 < p <= 1.
PrivacyCalibration CalibrateEdge(double epsilon, int n, double p,
                                 const LinkFunction& link, double c0 = 1.0);

// Individual-DP calibration for m users contributing L comparisons each over
// n items. The utility term uses d = 2mL/n.
PrivacyCalibration CalibrateIndividual(double epsilon, int n, int m, int L,
                                       const LinkFunction& link,
                                       double c0 = 1.0);

enum class StepRule { kFixed, kBacktracking };

struct SolverConfig {
  // Stopping threshold on the sup-norm of the gradient. Unset means
  // 1e-8 * max(1, gamma).
  std::optional<double> tol;
  int max_iters = 200000;
  StepRule step_rule = StepRule::kBacktracking;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(Vector last_iterate, double gradient_norm, int iterations);

  const Vector& last_iterate() const { return last_iterate_; }
  double gradient_norm() const { return gradient_norm_; }
  int iterations() const { return iterations_; }

 private:
  Vector last_iterate_;
  double gradient_norm_;
  int iterations_;
};

struct SolveResult {
  Vector theta;
  int iterations = 0;
  double gradient_norm = 0.0;  // sup-norm at theta
  double tol = 0.0;
};

// Minimizes the strongly convex objective described by `spec` by gradient
// descent from theta = 0. Throws ConvergenceError after max_iters.
SolveResult Minimize(const ObjectiveSpec& spec, const SolverConfig& config);

struct PrivateEstimate {
  LatentScores scores;
  Vector w;  // perturbation that was drawn
  int iterations = 0;
  double gradient_norm = 0.0;
  double tol = 0.0;
  bool floor_binding = false;
};

// Draws w with i.i.d. Laplace(lambda) coordinates and returns the minimizer of
//   nll(theta) + (gamma/2)||theta||^2 + w'theta.
// The estimate is (epsilon, 0)-DP under the calibration's adjacency notion.
// It is not re-centered. Throws ParameterError when the calibration regime
// does not match the dataset.
PrivateEstimate Estimate(const EdgeDataset& data,
                         const PrivacyCalibration& calib,
                         const LinkFunction& link, const SolverConfig& solver,
                         uint64_t seed);
PrivateEstimate Estimate(const IndividualDataset& data,
                         const PrivacyCalibration& calib,
                         const LinkFunction& link, const SolverConfig& solver,
                         uint64_t seed);
PrivateEstimate Estimate(const AggregatedCounts& data,
                         const PrivacyCalibration& calib,
                         const LinkFunction& link, const SolverConfig& solver,
                         uint64_t seed);

// Indices of the k largest scores, largest first; ties go to the lower index.
std::vector<int> RankFromScores(const LatentScores& scores, int k);

// Full ordering by descending value with the same tie rule.
std::vector<int> OrderByDescending(const Vector& values);

}  // namespace dprank

#endif  // DPRANK_PRIVATE_MLE_H_
