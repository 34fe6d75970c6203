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

#include "dprank/likelihood.h"

#include <map>
#include <utility>

#include "dprank/errors.h"

namespace dprank {
namespace {

std::vector<ComparisonTerm> TermsFromEdges(const EdgeDataset& data) {
  if (data.outcomes.size() != data.graph.edges.size()) {
    throw ParameterError("edge dataset has mismatched outcome count");
  }
  std::vector<ComparisonTerm> terms;
  terms.reserve(data.size());
  for (size_t e = 0; e < data.size(); ++e) {
    const Edge& edge = data.graph.edges[e];
    terms.push_back({edge.i, edge.j, 1.0, data.outcomes[e] ? 1.0 : 0.0});
  }
  return terms;
}

std::vector<ComparisonTerm> TermsFromCounts(const AggregatedCounts& data) {
  std::vector<ComparisonTerm> terms;
  terms.reserve(data.pairs.size());
  for (const PairCount& pc : data.pairs) {
    if (pc.compared == 0) continue;
    terms.push_back({pc.i, pc.j, static_cast<double>(pc.compared), pc.ybar()});
  }
  return terms;
}

Vector CheckedPerturbation(Vector w, int n) {
  if (w.size() == 0) return Vector::Zero(n);
  if (w.size() != n) throw ParameterError("perturbation length must equal n");
  return w;
}

void CheckTheta(const Vector& theta, const ObjectiveSpec& spec) {
  if (theta.size() != spec.n()) throw ParameterError("theta length must equal n");
}

// Derivative of one term with respect to x = theta_i - theta_j:
//   weight * (F - ybar) * F' / (F (1 - F)).
double TermSlope(const ComparisonTerm& t, const LinkFunction& link, double x) {
  return t.weight * (link.eval(x) - t.ybar) * link.score_ratio(x);
}

// Second derivative of one term in x. d^2/dx^2 of -log(1 - F(x)) equals the
// curvature of -log F at -x by symmetry.
double TermCurvature(const ComparisonTerm& t, const LinkFunction& link,
                     double x) {
  return t.weight * (t.ybar * link.neg_log_second(x) +
                     (1.0 - t.ybar) * link.neg_log_second(-x));
}

}  // namespace

int64_t AggregatedCounts::total() const {
  int64_t s = 0;
  for (const auto& pc : pairs) s += pc.compared;
  return s;
}

AggregatedCounts Aggregate(const IndividualDataset& data) {
  std::map<std::pair<int, int>, PairCount> by_pair;
  for (const auto& user : data.users) {
    for (const ComparisonRecord& r : user) {
      PairCount& pc = by_pair[{r.i, r.j}];
      pc.i = r.i;
      pc.j = r.j;
      ++pc.compared;
      if (r.winner == r.i) ++pc.wins;
    }
  }
  AggregatedCounts out;
  out.n = data.n;
  out.pairs.reserve(by_pair.size());
  for (auto& [key, pc] : by_pair) out.pairs.push_back(pc);
  return out;
}

ObjectiveSpec::ObjectiveSpec(const EdgeDataset& data, LinkFunction link,
                             double gamma, Vector w)
    : ObjectiveSpec(data.n(),
                    std::make_shared<const std::vector<ComparisonTerm>>(
                        TermsFromEdges(data)),
                    std::move(link), gamma, std::move(w)) {}

ObjectiveSpec::ObjectiveSpec(const AggregatedCounts& data, LinkFunction link,
                             double gamma, Vector w)
    : ObjectiveSpec(data.n,
                    std::make_shared<const std::vector<ComparisonTerm>>(
                        TermsFromCounts(data)),
                    std::move(link), gamma, std::move(w)) {}

ObjectiveSpec::ObjectiveSpec(
    int n, std::shared_ptr<const std::vector<ComparisonTerm>> terms,
    LinkFunction link, double gamma, Vector w)
    : n_(n),
      terms_(std::move(terms)),
      link_(std::move(link)),
      gamma_(gamma),
      w_(CheckedPerturbation(std::move(w), n)) {
  if (!(gamma >= 0.0)) throw ParameterError("ridge coefficient must be >= 0");
}

ObjectiveSpec ObjectiveSpec::WithPenalty(double gamma, Vector w) const {
  return ObjectiveSpec(n_, terms_, link_, gamma, std::move(w));
}

double ObjectiveSpec::MaxWeightedDegree() const {
  Vector degree = Vector::Zero(n_);
  for (const auto& t : *terms_) {
    degree[t.i] += t.weight;
    degree[t.j] += t.weight;
  }
  return n_ > 0 ? degree.maxCoeff() : 0.0;
}

double Nll(const Vector& theta, const ObjectiveSpec& spec) {
  CheckTheta(theta, spec);
  const LinkFunction& link = spec.link();
  double total = 0.0;
  for (const ComparisonTerm& t : spec.terms()) {
    const double x = theta[t.i] - theta[t.j];
    // Skip zero-weight logs so that ybar in {0, 1} never multiplies -inf.
    double term = 0.0;
    if (t.ybar > 0.0) term -= t.ybar * link.log_eval(x);
    if (t.ybar < 1.0) term -= (1.0 - t.ybar) * link.LogComplement(x);
    total += t.weight * term;
  }
  return total;
}

double Objective(const Vector& theta, const ObjectiveSpec& spec) {
  return Nll(theta, spec) + 0.5 * spec.gamma() * theta.squaredNorm() +
         spec.w().dot(theta);
}

Vector Gradient(const Vector& theta, const ObjectiveSpec& spec) {
  CheckTheta(theta, spec);
  Vector g = spec.gamma() * theta + spec.w();
  for (const ComparisonTerm& t : spec.terms()) {
    const double s = TermSlope(t, spec.link(), theta[t.i] - theta[t.j]);
    g[t.i] += s;
    g[t.j] -= s;
  }
  return g;
}

Matrix Hessian(const Vector& theta, const ObjectiveSpec& spec) {
  CheckTheta(theta, spec);
  if (spec.n() > 2000) throw ParameterError("dense Hessian limited to n <= 2000");
  Matrix h = spec.gamma() * Matrix::Identity(spec.n(), spec.n());
  for (const ComparisonTerm& t : spec.terms()) {
    const double c = TermCurvature(t, spec.link(), theta[t.i] - theta[t.j]);
    h(t.i, t.i) += c;
    h(t.j, t.j) += c;
    h(t.i, t.j) -= c;
    h(t.j, t.i) -= c;
  }
  return h;
}

}  // namespace dprank
