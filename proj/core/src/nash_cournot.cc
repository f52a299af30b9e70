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

#include "dpdda/nash_cournot.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dpdda/errors.h"

namespace dpdda::game {

NashCournot::NashCournot(NashCournotParams params) : params_(std::move(params)) {
  if (params_.lower.empty() || params_.lower.size() != params_.upper.size()) {
    throw DomainError("Nash-Cournot boxes need matching, nonempty bounds");
  }
  for (std::size_t i = 0; i < params_.lower.size(); ++i) {
    if (!(params_.lower[i] <= params_.upper[i]) ||
        !std::isfinite(params_.lower[i]) || !std::isfinite(params_.upper[i])) {
      throw DomainError("Nash-Cournot box " + std::to_string(i + 1) +
                        " is empty or unbounded");
    }
    boxes_.push_back(Box{{params_.lower[i]}, {params_.upper[i]}});
  }
  if (params_.period <= 0.0) throw DomainError("period must be positive");
  constants_ = ComputeConstants();
}

double NashCournot::ProductionPrice(int i, int t) const {
  const double firm = static_cast<double>(i + 1);
  return params_.price_amplitude * (firm + 1.0) *
             std::sin(static_cast<double>(t) / params_.period) +
         params_.price_slope * firm;
}

double NashCournot::MarketPrice(int t, double total) const {
  return params_.base_price -
         params_.market_amplitude *
             std::sin(static_cast<double>(t) / params_.period) -
         total;
}

// The engine tracks Psi as the average of psi_j, so the market total is V*Psi.
double NashCournot::EvaluateCost(int i, int t, std::span<const double> x_i,
                                 std::span<const double> psi_val) const {
  const double total = num_agents() * psi_val[0];
  return (ProductionPrice(i, t) - MarketPrice(t, total)) * x_i[0];
}

Vec NashCournot::EvaluateGrad1(int i, int t, std::span<const double>,
                               std::span<const double> psi_val) const {
  const double total = num_agents() * psi_val[0];
  return {ProductionPrice(i, t) - MarketPrice(t, total)};
}

Vec NashCournot::EvaluateGrad2(int, int, std::span<const double> x_i,
                               std::span<const double>) const {
  return {num_agents() * x_i[0]};
}

Vec NashCournot::EvaluatePsi(int, std::span<const double> x_i) const {
  return {x_i[0]};
}

Matrix NashCournot::EvaluateGradPsi(int, std::span<const double>) const {
  return Matrix(1, 1, 1.0);
}

GameConstants NashCournot::ComputeConstants() const {
  const int v = num_agents();
  double sum_lo = 0.0, sum_hi = 0.0;
  for (const Box& b : boxes_) {
    sum_lo += b.lower[0];
    sum_hi += b.upper[0];
  }
  // Both gradients are affine in (sin, x_i, sum of the others), so their
  // magnitudes peak at corners of that product of intervals.
  double bound = 0.0;
  for (int i = 0; i < v; ++i) {
    const double firm = static_cast<double>(i + 1);
    const double lo = boxes_[i].lower[0], hi = boxes_[i].upper[0];
    for (double s : {-1.0, 1.0}) {
      const double offset = params_.price_amplitude * (firm + 1.0) * s +
                            params_.price_slope * firm - params_.base_price +
                            params_.market_amplitude * s;
      for (double xi : {lo, hi}) {
        for (double others : {sum_lo - lo, sum_hi - hi}) {
          const double g1 = offset + xi + others;
          bound = std::max({bound, std::abs(g1), std::abs(g1 + xi)});
        }
      }
    }
  }
  double radius = 0.0;
  for (const Box& b : boxes_) {
    radius = std::max({radius, b.upper[0] - b.lower[0], std::abs(b.lower[0]),
                       std::abs(b.upper[0])});
  }
  GameConstants c;
  c.gradient_bound = bound;
  c.smoothness = 1.0;
  c.monotonicity = 1.0;  // smallest eigenvalue of I + 11^T
  c.radius = radius;
  c.pseudogradient_lipschitz = static_cast<double>(v + 1);
  return c;
}

}  // namespace dpdda::game
