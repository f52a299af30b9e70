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

#ifndef DPDDA_NASH_COURNOT_H_
#define DPDDA_NASH_COURNOT_H_

#include <vector>

#include "dpdda/game.h"

namespace dpdda::game {

// Online Nash-Cournot market. Firm i (1-based in the formulas) has production
// price p_{i,t} = a (i+1) sin(t/P) + c i and faces the market price
// m_t = base - d sin(t/P) - sum_j x_j. Cost is (p_{i,t} - m_t) x_i, scalar
// actions, psi_i(x) = x.
struct NashCournotParams {
  std::vector<double> lower = {-5.0, 0.0, -4.0, 3.0, -1.0};
  std::vector<double> upper = {5.0, 10.0, 8.0, 12.0, 6.0};
  double base_price = 850.0;
  double market_amplitude = 10.0;
  double price_amplitude = 4.0;
  double price_slope = 50.0;
  double period = 6.0;

  bool operator==(const NashCournotParams&) const = default;
};

class NashCournot final : public AggregativeGame {
 public:
  // Throws DomainError for mismatched or empty boxes.
  explicit NashCournot(NashCournotParams params = {});

  std::string name() const override { return "nash_cournot"; }
  int num_agents() const override { return static_cast<int>(boxes_.size()); }
  int dim() const override { return 1; }
  const Box& box(int i) const override { return boxes_[i]; }
  GameConstants constants() const override { return constants_; }

  const NashCournotParams& params() const { return params_; }

  // i is 0-based.
  double ProductionPrice(int i, int t) const;
  // Market price when the agents' total output is 'total'.
  double MarketPrice(int t, double total) const;

 protected:
  double EvaluateCost(int i, int t, std::span<const double> x_i,
                      std::span<const double> psi_val) const override;
  Vec EvaluateGrad1(int i, int t, std::span<const double> x_i,
                    std::span<const double> psi_val) const override;
  Vec EvaluateGrad2(int i, int t, std::span<const double> x_i,
                    std::span<const double> psi_val) const override;
  Vec EvaluatePsi(int i, std::span<const double> x_i) const override;
  Matrix EvaluateGradPsi(int i, std::span<const double> x_i) const override;

 private:
  GameConstants ComputeConstants() const;

  NashCournotParams params_;
  std::vector<Box> boxes_;
  GameConstants constants_;
};

}  // namespace dpdda::game

#endif  // DPDDA_NASH_COURNOT_H_
