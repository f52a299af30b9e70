// Copyright 2026 The dpdda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpdda/game.h"

#include <algorithm>
#include <string>

#include "dpdda/errors.h"

namespace dpdda::game {

bool Box::Contains(std::span<const double> x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] >= lower[k] && x[k] <= upper[k])) return false;
  }
  return true;
}

Vec Box::Clamp(std::span<const double> x) const {
  Vec out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = std::clamp(x[k], lower[k], upper[k]);
  }
  return out;
}

void AggregativeGame::CheckAction(int i, std::span<const double> x_i) const {
  if (i < 0 || i >= num_agents()) {
    throw DomainError("agent index " + std::to_string(i) + " out of range");
  }
  if (static_cast<int>(x_i.size()) != dim()) {
    throw DomainError("action of agent " + std::to_string(i + 1) +
                      " has dimension " + std::to_string(x_i.size()) +
                      ", expected " + std::to_string(dim()));
  }
  if (!box(i).Contains(x_i)) {
    throw DomainError("action of agent " + std::to_string(i + 1) +
                      " lies outside its action box");
  }
}

double AggregativeGame::Cost(int i, int t, std::span<const double> x_i,
                             std::span<const double> psi_val) const {
  CheckAction(i, x_i);
  return EvaluateCost(i, t, x_i, psi_val);
}

Vec AggregativeGame::Grad1(int i, int t, std::span<const double> x_i,
                           std::span<const double> psi_val) const {
  CheckAction(i, x_i);
  return EvaluateGrad1(i, t, x_i, psi_val);
}

Vec AggregativeGame::Grad2(int i, int t, std::span<const double> x_i,
                           std::span<const double> psi_val) const {
  CheckAction(i, x_i);
  return EvaluateGrad2(i, t, x_i, psi_val);
}

Vec AggregativeGame::Psi(int i, std::span<const double> x_i) const {
  return EvaluatePsi(i, x_i);
}

Matrix AggregativeGame::GradPsi(int i, std::span<const double> x_i) const {
  return EvaluateGradPsi(i, x_i);
}

Vec AggregativeGame::LocalGradient(int i, int t, std::span<const double> x_i,
                                   std::span<const double> v_i) const {
  CheckAction(i, x_i);
  Vec g = EvaluateGrad1(i, t, x_i, v_i);
  const Vec g2 = EvaluateGrad2(i, t, x_i, v_i);
  const Matrix jac = EvaluateGradPsi(i, x_i);
  const double inv_v = 1.0 / static_cast<double>(num_agents());
  const std::size_t m = g.size();
  for (std::size_t b = 0; b < m; ++b) {
    double chain = 0.0;
    for (std::size_t a = 0; a < m; ++a) chain += jac(a, b) * g2[a];
    g[b] += chain * inv_v;
  }
  return g;
}

Vec AggregativeGame::Aggregate(std::span<const double> x) const {
  const int v = num_agents();
  const int m = dim();
  Vec agg(m, 0.0);
  for (int j = 0; j < v; ++j) {
    const Vec p = EvaluatePsi(j, AgentBlock(x, j, m));
    for (int k = 0; k < m; ++k) agg[k] += p[k];
  }
  for (double& a : agg) a /= static_cast<double>(v);
  return agg;
}

Vec AggregativeGame::Pseudogradient(int t, std::span<const double> x) const {
  const int v = num_agents();
  const int m = dim();
  if (static_cast<int>(x.size()) != v * m) {
    throw DomainError("profile has wrong size");
  }
  const Vec agg = Aggregate(x);
  Vec out;
  out.reserve(x.size());
  for (int i = 0; i < v; ++i) {
    const Vec g = LocalGradient(i, t, AgentBlock(x, i, m), agg);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

double AggregativeGame::CostAgainst(int i, int t, std::span<const double> x_i,
                                    std::span<const double> profile) const {
  const int m = dim();
  Vec mixed(profile.begin(), profile.end());
  std::copy(x_i.begin(), x_i.end(), mixed.begin() + static_cast<long>(i) * m);
  return Cost(i, t, x_i, Aggregate(mixed));
}

}  // namespace dpdda::game
