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

#ifndef DPDDA_METRICS_H_
#define DPDDA_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dpdda/engine.h"
#include "dpdda/game.h"
#include "dpdda/linalg.h"

namespace dpdda::metrics {

struct OracleOptions {
  // Bound on ||x_star - x*||_2, certified by the contraction factor.
  double tol = 1e-10;
  int max_iterations = 1000000;
  // Starting profile (V*m); the box centre when absent. Clamped into Omega.
  std::optional<Vec> start;
  // Used only when the game does not publish a pseudogradient Lipschitz
  // constant.
  int lipschitz_samples = 256;
  std::uint64_t seed = 1;
};

struct EquilibriumSolution {
  int t = 0;
  Vec x_star;
  double residual = 0.0;  // length of the final fixed-point step
  int iterations = 0;
  double step = 0.0;      // alpha
};

// Sampled lower estimate of the pseudogradient Lipschitz constant over Omega,
// inflated by a safety factor of 1.5.
double EstimatePseudogradientLipschitz(const game::AggregativeGame& game,
                                       int t, int samples, std::uint64_t seed);

// Projected pseudogradient iteration with alpha = mu / L_F^2. Throws
// DiagnosticError when successive steps stop contracting or the iteration
// budget runs out.
EquilibriumSolution SolveEquilibrium(const game::AggregativeGame& game, int t,
                                     const OracleOptions& options = {});

// Solutions for t = 0 .. count-1, each warm-started from the previous one.
std::vector<EquilibriumSolution> SolveEquilibriumPath(
    const game::AggregativeGame& game, int count,
    const OracleOptions& options = {});

// Dynamic regret over the played rounds t = 0 .. T-1.
struct RegretReport {
  std::vector<double> gap;                    // per-round sum over agents
  std::vector<double> cumulative;             // raw R(t+1)
  std::vector<double> cumulative_mean;        // R(t+1) / V
  std::vector<std::vector<double>> per_agent; // [agent][t] cumulative R_i
  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
  double mean_total() const {
    return cumulative_mean.empty() ? 0.0 : cumulative_mean.back();
  }
};

// solutions[t] must be the equilibrium at round t for every t < horizon;
// throws OutOfRangeError otherwise.
RegretReport DynamicRegret(const game::AggregativeGame& game,
                           const engine::Trajectory& trajectory,
                           std::span<const EquilibriumSolution> solutions);

// Running mean: out[k] = mean(losses[0..k]).
std::vector<double> RunningMean(std::span<const double> losses);

enum class LossKind { kLocal, kTrue };

// Per-agent series (1/t) sum_{s=1..t} F_{i,s}, t = 1..T.
std::vector<std::vector<double>> AverageLoss(
    const engine::Trajectory& trajectory, LossKind kind = LossKind::kLocal);

struct Stabilization {
  double rel_std = 0.0;  // tail_std / |tail_mean|, or tail_std if degenerate
  double slope = 0.0;    // least-squares slope per index step
  double tail_mean = 0.0;
  double tail_std = 0.0;
  int tail_length = 0;
  bool degenerate = false;
};

// Throws OutOfRangeError when fraction is outside (0, 1] or the series is
// shorter than 10 / fraction.
Stabilization StabilizationStat(std::span<const double> series,
                                double fraction);

struct StabilizationCriterion {
  double fraction = 0.1;
  double max_rel_std = 0.05;
  double max_abs_slope = 1e-2;
};

bool Meets(const Stabilization& s, const StabilizationCriterion& c);

// Smallest prefix length n such that every prefix of length >= n meets the
// criterion; nullopt if the full series does not.
std::optional<int> StabilizationTime(std::span<const double> series,
                                     const StabilizationCriterion& c);

}  // namespace dpdda::metrics

#endif  // DPDDA_METRICS_H_
