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

#ifndef DPRANK_LIKELIHOOD_H_
#define DPRANK_LIKELIHOOD_H_

#include <memory>
#include <vector>

#include "dprank/data_model.h"
#include "dprank/link.h"

namespace dprank {

// Per-pair comparison totals from an individual dataset. Only pairs that were
// compared at least once are listed, in lexicographic order.
struct PairCount {
  int i = 0;  // i < j
  int j = 0;
  int64_t compared = 0;  // M_ij
  int64_t wins = 0;      // times i beat j; ybar_ij = wins / compared

  double ybar() const { return static_cast<double>(wins) / compared; }
};

struct AggregatedCounts {
  int n = 0;
  std::vector<PairCount> pairs;

  int64_t total() const;
};

AggregatedCounts Aggregate(const IndividualDataset& data);

// Weighted comparison terms shared by the edge and aggregated likelihoods:
// weight * [-ybar log F(x) - (1 - ybar) log(1 - F(x))], x = theta_i - theta_j.
// An edge is a term of weight 1 with ybar in {0, 1}.
struct ComparisonTerm {
  int i = 0;
  int j = 0;
  double weight = 0.0;
  double ybar = 0.0;
};

// Objective
//   nll(theta) + (gamma / 2) ||theta||^2 + w' theta.
// gamma = 0 and an empty w give the plain negative log-likelihood.
class ObjectiveSpec {
 public:
  ObjectiveSpec(const EdgeDataset& data, LinkFunction link, double gamma = 0.0,
                Vector w = {});
  ObjectiveSpec(const AggregatedCounts& data, LinkFunction link,
                double gamma = 0.0, Vector w = {});

  int n() const { return n_; }
  double gamma() const { return gamma_; }
  // Perturbation vector; all zeros when none was given.
  const Vector& w() const { return w_; }
  const LinkFunction& link() const { return link_; }
  const std::vector<ComparisonTerm>& terms() const { return *terms_; }

  // Copy with a different ridge / perturbation, sharing the comparison terms.
  ObjectiveSpec WithPenalty(double gamma, Vector w) const;

  // Largest total weight touching a single item.
  double MaxWeightedDegree() const;

 private:
  ObjectiveSpec(int n, std::shared_ptr<const std::vector<ComparisonTerm>> terms,
                LinkFunction link, double gamma, Vector w);

  int n_ = 0;
  std::shared_ptr<const std::vector<ComparisonTerm>> terms_;
  LinkFunction link_;
  double gamma_ = 0.0;
  Vector w_;
};

// Negative log-likelihood only; ridge and perturbation terms are excluded.
double Nll(const Vector& theta, const ObjectiveSpec& spec);

// nll + (gamma/2)||theta||^2 + w'theta.
double Objective(const Vector& theta, const ObjectiveSpec& spec);

// Gradient of Objective.
Vector Gradient(const Vector& theta, const ObjectiveSpec& spec);

// Hessian of Objective, dense. Meant for tests and audits (n <= 2000).
Matrix Hessian(const Vector& theta, const ObjectiveSpec& spec);

}  // namespace dprank

#endif  // DPRANK_LIKELIHOOD_H_
