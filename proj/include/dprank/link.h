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

#ifndef DPRANK_LINK_H_
#define DPRANK_LINK_H_

#include <functional>
#include <string>
#include <vector>

namespace dprank {

// A comparison link F: P(i beats j) = F(theta_i - theta_j).
//
// A usable link is strictly increasing, symmetric (F(x) = 1 - F(-x)), has a
// bounded score ratio F'/(F(1-F)) <= kappa1, and -log F is strictly convex
// with curvature below kappa2 everywhere and above 1/kappa2 on [-4, 4].
// These constants calibrate the noise and ridge terms of the private
// estimator, so a link carrying wrong constants loses its privacy guarantee.
// ValidateConditions checks them on a grid.
//
// All members are plain functions of x; a LinkFunction is immutable once
// built and may be shared freely between threads.
struct LinkFunction {
  std::string name;
  std::function<double(double)> eval;            // F(x)
  std::function<double(double)> deriv;           // F'(x)
  std::function<double(double)> log_eval;        // log F(x), stable in the tails
  std::function<double(double)> score_ratio;     // F'(x) / (F(x)(1 - F(x)))
  std::function<double(double)> neg_log_second;  // d^2/dx^2 (-log F(x))
  double kappa1 = 0.0;
  double kappa2 = 0.0;

  // log(1 - F(x)) via symmetry.
  double LogComplement(double x) const { return log_eval(-x); }
};

// Standard logistic CDF with kappa1 = 1 and kappa2 = 57.
//
// For the logistic, F' = F(1-F) so the score ratio is identically 1, and the
// curvature of -log F is F(1-F) in (0, 1/4], with F(4)(1-F(4)) ~ 0.017663
// just above 1/57.
LinkFunction LogisticLink();

// Resolves a link by name ("logistic"). Throws ParameterError otherwise.
LinkFunction LinkByName(const std::string& name);

struct ConditionCheck {
  std::string condition;
  bool passed = false;
  // Grid point with the smallest margin, and that margin. Negative margin
  // means the inequality is violated there.
  double worst_x = 0.0;
  double margin = 0.0;
};

struct ValidationReport {
  std::vector<ConditionCheck> checks;

  bool AllPassed() const;
  const ConditionCheck* Find(const std::string& condition) const;
};

// Checks the link's regularity conditions on `grid_points` evenly spaced
// points of [-grid_halfwidth, grid_halfwidth]. Violations are reported, not
// thrown. Throws ParameterError if grid_points < 100 or grid_halfwidth < 4.
//
// Condition names: "monotone", "symmetry", "score_ratio", "curvature_upper",
// "curvature_lower".
ValidationReport ValidateConditions(const LinkFunction& link,
                                    double grid_halfwidth, int grid_points);

}  // namespace dprank

#endif  // DPRANK_LINK_H_
