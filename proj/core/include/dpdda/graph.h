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

#ifndef DPDDA_GRAPH_H_
#define DPDDA_GRAPH_H_

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dpdda/delays.h"
#include "dpdda/graph_types.h"
#include "dpdda/linalg.h"

namespace dpdda::graph {

// Same edge set at every t.
struct StaticRule {
  std::vector<Edge> edges;
  bool operator==(const StaticRule&) const = default;
};

// Edge set phases[t mod P].
struct PeriodicRule {
  std::vector<std::vector<Edge>> phases;
  bool operator==(const PeriodicRule&) const = default;
};

// Edge present only when (t mod period) is one of active_phases.
struct IntermittentEdge {
  Edge edge;
  int period = 2;
  std::vector<int> active_phases;
  bool operator==(const IntermittentEdge&) const = default;
};

// Base edges plus edges keyed on t, e.g. a link that drops at odd t.
struct ProceduralRule {
  std::vector<Edge> base;
  std::vector<IntermittentEdge> intermittent;
  bool operator==(const ProceduralRule&) const = default;
};

using ScheduleRule = std::variant<StaticRule, PeriodicRule, ProceduralRule>;

// Generator of the time-varying digraph G(t). Immutable after construction.
class GraphSchedule {
 public:
  // Throws InvalidScheduleError for agent indices outside [0, num_agents) or
  // malformed rules (empty period, nonpositive intermittent period).
  GraphSchedule(int num_agents, ScheduleRule rule,
                bool require_self_loops = true);
  // Single agent with its self-loop.
  GraphSchedule() : GraphSchedule(1, StaticRule{{Edge{0, 0}}}) {}

  int num_agents() const { return num_agents_; }
  const ScheduleRule& rule() const { return rule_; }
  bool require_self_loops() const { return require_self_loops_; }

  // Sorted, duplicate-free edge set at time t (t >= 0).
  std::vector<Edge> EdgesAt(int t) const;

  // Sorted in-neighbourhood of every agent at time t, self included when the
  // self-loop is present.
  std::vector<std::vector<int>> InNeighbors(int t) const;

  // Row-stochastic W(t): [W]_ij = 1/d_i when j is an in-neighbour of i.
  // Throws InvalidScheduleError if some agent has no in-neighbour, or lacks a
  // self-loop while require_self_loops() is set.
  Matrix WeightsAt(int t) const;

  bool operator==(const GraphSchedule&) const = default;

 private:
  int num_agents_;
  ScheduleRule rule_;
  bool require_self_loops_;
};

inline Matrix WeightsAt(const GraphSchedule& schedule, int t) {
  return schedule.WeightsAt(t);
}

bool IsStronglyConnected(int num_agents, std::span<const Edge> edges);

struct ConnectivityReport {
  bool connected = true;
  // Index k of the first window [kB, (k+1)B - 1] whose union is not strongly
  // connected.
  std::optional<int> first_violating_window;
  int window_begin = 0;
  int window_end = 0;
};

// Checks every complete window [kB, (k+1)B - 1] with (k+1)B <= horizon.
// Requires horizon >= B >= 1; throws DomainError otherwise.
ConnectivityReport ValidateBConnectivity(const GraphSchedule& schedule, int b,
                                         int horizon);

// Lays out the augmented matrix
//   [ B0 B1 ... B_tau ]
//   [ I  0  ...  0    ]
//   [ 0  I  ...  0    ]
//   [ ...        0    ]
//   [ 0  ...  I  0    ]
// from the top block row. All blocks must be V x V.
Matrix AssembleAugmented(std::span<const Matrix> top_blocks);

// Splits W(t) into blocks W^r(t) by delay and assembles the augmented matrix
// W'(t) of size V(1 + tau_max). Throws OutOfRangeError if any delay on an
// edge exceeds tau_max or is negative.
Matrix Augment(const Matrix& weights, const DelaySlice& delays, int tau_max);

// Blocks W^0(t) ... W^tau_max(t) with [W^r]_ij = [W]_ij iff tau_ij = r.
std::vector<Matrix> SplitByDelay(const Matrix& weights,
                                  const DelaySlice& delays, int tau_max);

// min over t in [0, horizon] and i of y_ii(t), where Y(t) = W(t-1)...W(0).
// The reciprocal is the empirical theta.
double SelfWeightFloor(const GraphSchedule& schedule, int horizon);

struct MixingDiagnostics {
  // Fitted |[W'(t:0)]_ij - pi_j(0)| <= c_hat * lambda_hat^(t+1).
  double c_hat = 0.0;
  double lambda_hat = 0.0;
  double r_squared = 1.0;
  int fit_points = 0;
  // max_ij deviation for product lengths 1, 2, ...
  std::vector<double> deviations;
  // pi(s) for s = 0 ... horizon/2; each sums to 1.
  std::vector<Vec> pi_trace;
  double min_pi = 0.0;       // over all V' agents
  double min_real_pi = 0.0;  // over the V real agents only
  // Largest row spread of the longest backward product used for pi.
  double pi_residual = 0.0;
};

// Estimates geometric mixing constants of the augmented products
// W'(t:s) = W'(t) ... W'(s) over t < horizon. Throws DiagnosticError when the
// products do not reach a rank-one limit within the horizon.
MixingDiagnostics ComputeMixingDiagnostics(const GraphSchedule& schedule,
                                           const DelaySchedule& delays,
                                           int horizon);

}  // namespace dpdda::graph

#endif  // DPDDA_GRAPH_H_
