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

#ifndef DPDDA_GAME_H_
#define DPDDA_GAME_H_

#include <optional>
#include <span>
#include <string>

#include "dpdda/linalg.h"

namespace dpdda::game {

// Axis-aligned box in R^m.
struct Box {
  Vec lower;
  Vec upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool Contains(std::span<const double> x) const;
  Vec Clamp(std::span<const double> x) const;
  bool operator==(const Box&) const = default;
};

// Regularity constants of a game.
struct GameConstants {
  double gradient_bound = 0.0;  // L: |grad_1 F| and |full gradient| on Omega
  double smoothness = 0.0;      // G
  double monotonicity = 0.0;    // mu
  double radius = 0.0;          // R
  // Lipschitz constant of the pseudogradient, if known analytically.
  std::optional<double> pseudogradient_lipschitz;
};

// An aggregative game: agent i pays F_{i,t}(x_i, Psi) where
// Psi = (1/V) sum_j psi_j(x_j). Implementations supply analytic derivatives;
// the public entry points check that actions lie in their boxes.
class AggregativeGame {
 public:
  virtual ~AggregativeGame() = default;

  virtual std::string name() const = 0;
  virtual int num_agents() const = 0;
  virtual int dim() const = 0;
  virtual const Box& box(int i) const = 0;
  virtual GameConstants constants() const = 0;

  // Throws DomainError if x_i is outside box(i) or has the wrong size.
  double Cost(int i, int t, std::span<const double> x_i,
              std::span<const double> psi_val) const;
  // Partial gradient in x_i with Psi held fixed.
  Vec Grad1(int i, int t, std::span<const double> x_i,
            std::span<const double> psi_val) const;
  // Partial gradient in Psi.
  Vec Grad2(int i, int t, std::span<const double> x_i,
            std::span<const double> psi_val) const;
  Vec Psi(int i, std::span<const double> x_i) const;
  // Jacobian J[a][b] = d psi_a / d x_b (m x m).
  Matrix GradPsi(int i, std::span<const double> x_i) const;

  // Full aggregative gradient grad_1 F + J^T grad_2 F / V evaluated with the
  // estimate v_i standing in for Psi.
  Vec LocalGradient(int i, int t, std::span<const double> x_i,
                    std::span<const double> v_i) const;

  // Exact aggregate (1/V) sum_j psi_j(x_j) of a stacked profile (V*m).
  Vec Aggregate(std::span<const double> x) const;

  // Stacked local gradients at the exact aggregate.
  Vec Pseudogradient(int t, std::span<const double> x) const;

  // Cost of agent i when it plays x_i and the others play profile[-i].
  double CostAgainst(int i, int t, std::span<const double> x_i,
                     std::span<const double> profile) const;

  void CheckAction(int i, std::span<const double> x_i) const;

 protected:
  virtual double EvaluateCost(int i, int t, std::span<const double> x_i,
                              std::span<const double> psi_val) const = 0;
  virtual Vec EvaluateGrad1(int i, int t, std::span<const double> x_i,
                            std::span<const double> psi_val) const = 0;
  virtual Vec EvaluateGrad2(int i, int t, std::span<const double> x_i,
                            std::span<const double> psi_val) const = 0;
  virtual Vec EvaluatePsi(int i, std::span<const double> x_i) const = 0;
  virtual Matrix EvaluateGradPsi(int i, std::span<const double> x_i) const = 0;
};

// x restricted to agent i's block of a stacked profile.
inline std::span<const double> AgentBlock(std::span<const double> x, int i,
                                          int m) {
  return x.subspan(static_cast<std::size_t>(i) * m, m);
}

}  // namespace dpdda::game

#endif  // DPDDA_GAME_H_
