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

#include "dprank/link.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dprank/errors.h"

namespace dprank {
namespace {

constexpr double kSymmetryTol = 1e-12;
// Relative slack on the score-ratio bound; the logistic ratio is exactly 1 up
// to rounding.
constexpr double kRatioRelTol = 1e-10;

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(sigmoid(x)) = -softplus(-x).
double LogSigmoid(double x) {
  if (x >= 0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

double SigmoidVariance(double x) {
  // F(x)F(-x) without forming 1 - F(x).
  return Sigmoid(x) * Sigmoid(-x);
}

ConditionCheck MakeCheck(const char* name) {
  ConditionCheck c;
  c.condition = name;
  c.margin = std::numeric_limits<double>::infinity();
  return c;
}

void Observe(ConditionCheck& check, double x, double margin) {
  if (margin < check.margin || std::isnan(margin)) {
    check.margin = std::isnan(margin) ? -std::numeric_limits<double>::infinity()
                                      : margin;
    check.worst_x = x;
  }
}

}  // namespace

LinkFunction LogisticLink() {
  LinkFunction link;
  link.name = "logistic";
  link.eval = Sigmoid;
  link.deriv = SigmoidVariance;
  link.log_eval = LogSigmoid;
  link.score_ratio = [](double) { return 1.0; };
  link.neg_log_second = SigmoidVariance;
  link.kappa1 = 1.0;
  link.kappa2 = 57.0;
  return link;
}

LinkFunction LinkByName(const std::string& name) {
  if (name == "logistic") return LogisticLink();
  throw ParameterError("unknown link function: " + name);
}

bool ValidationReport::AllPassed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ConditionCheck& c) { return c.passed; });
}

const ConditionCheck* ValidationReport::Find(
    const std::string& condition) const {
  for (const auto& c : checks) {
    if (c.condition == condition) return &c;
  }
  return nullptr;
}

ValidationReport ValidateConditions(const LinkFunction& link,
                                    double grid_halfwidth, int grid_points) {
  if (grid_points < 100) throw ParameterError("grid_points must be >= 100");
  if (!(grid_halfwidth >= 4.0)) {
    throw ParameterError("grid_halfwidth must be >= 4");
  }
  ConditionCheck monotone = MakeCheck("monotone");
  ConditionCheck symmetry = MakeCheck("symmetry");
  ConditionCheck ratio = MakeCheck("score_ratio");
  ConditionCheck upper = MakeCheck("curvature_upper");
  ConditionCheck lower = MakeCheck("curvature_lower");

  const double step = 2.0 * grid_halfwidth / (grid_points - 1);
  double prev_f = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    const double x = -grid_halfwidth + k * step;
    const double f = link.eval(x);
    if (k > 0) Observe(monotone, x, f - prev_f);
    prev_f = f;

    Observe(symmetry, x, kSymmetryTol - std::abs(f - (1.0 - link.eval(-x))));

    const double r = link.deriv(x) / (f * (1.0 - f));
    Observe(ratio, x, link.kappa1 * (1.0 + kRatioRelTol) - r);

    const double h = link.neg_log_second(x);
    // 0 < h < kappa2 everywhere.
    Observe(upper, x, std::min(h, link.kappa2 - h));
    if (std::abs(x) <= 4.0) Observe(lower, x, h - 1.0 / link.kappa2);
  }
  // The lower bound is a minimum over |x| <= 4; the endpoints matter even if
  // the grid straddles them.
  for (double x : {-4.0, 4.0}) {
    Observe(lower, x, link.neg_log_second(x) - 1.0 / link.kappa2);
  }

  ValidationReport report;
  for (ConditionCheck* c : {&monotone, &symmetry, &ratio, &upper, &lower}) {
    // Strict inequalities: a zero margin is a failure, except for the
    // score ratio which is allowed to touch kappa1.
    c->passed = c == &ratio ? c->margin >= 0.0 : c->margin > 0.0;
    report.checks.push_back(*c);
  }
  return report;
}

}  // namespace dprank
