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

#include "dpdda/graph.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "dpdda/errors.h"

namespace dpdda::graph {
namespace {

void CheckEdges(const std::vector<Edge>& edges, int n) {
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
      throw InvalidScheduleError("edge (" + std::to_string(e.from + 1) +
                                 " -> " + std::to_string(e.to + 1) +
                                 ") references an agent outside 1.." +
                                 std::to_string(n));
    }
  }
}

int PositiveMod(int t, int p) {
  const int r = t % p;
  return r < 0 ? r + p : r;
}

// Reachability from agent 0, forward or backward.
std::vector<bool> Reach(int n, std::span<const Edge> edges, bool forward) {
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges) {
    if (forward) {
      adj[e.from].push_back(e.to);
    } else {
      adj[e.to].push_back(e.from);
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

LineFit FitLine(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace

GraphSchedule::GraphSchedule(int num_agents, ScheduleRule rule,
                             bool require_self_loops)
    : num_agents_(num_agents),
      rule_(std::move(rule)),
      require_self_loops_(require_self_loops) {
  if (num_agents_ < 1) {
    throw InvalidScheduleError("a schedule needs at least one agent");
  }
  if (const auto* s = std::get_if<StaticRule>(&rule_)) {
    CheckEdges(s->edges, num_agents_);
  } else if (const auto* p = std::get_if<PeriodicRule>(&rule_)) {
    if (p->phases.empty()) {
      throw InvalidScheduleError("periodic schedule has no phases");
    }
    for (const auto& phase : p->phases) CheckEdges(phase, num_agents_);
  } else {
    const auto& proc = std::get<ProceduralRule>(rule_);
    CheckEdges(proc.base, num_agents_);
    for (const auto& ie : proc.intermittent) {
      CheckEdges({ie.edge}, num_agents_);
      if (ie.period < 1) {
        throw InvalidScheduleError("intermittent edge period must be >= 1");
      }
    }
  }
}

std::vector<Edge> GraphSchedule::EdgesAt(int t) const {
  std::vector<Edge> edges;
  if (const auto* s = std::get_if<StaticRule>(&rule_)) {
    edges = s->edges;
  } else if (const auto* p = std::get_if<PeriodicRule>(&rule_)) {
    const int period = static_cast<int>(p->phases.size());
    edges = p->phases[PositiveMod(t, period)];
  } else {
    const auto& proc = std::get<ProceduralRule>(rule_);
    edges = proc.base;
    for (const auto& ie : proc.intermittent) {
      const int phase = PositiveMod(t, ie.period);
      if (std::find(ie.active_phases.begin(), ie.active_phases.end(), phase) !=
          ie.active_phases.end()) {
        edges.push_back(ie.edge);
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::pair(a.to, a.from) < std::pair(b.to, b.from);
  });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<std::vector<int>> GraphSchedule::InNeighbors(int t) const {
  std::vector<std::vector<int>> in(num_agents_);
  for (const Edge& e : EdgesAt(t)) in[e.to].push_back(e.from);
  return in;
}

Matrix GraphSchedule::WeightsAt(int t) const {
  const auto in = InNeighbors(t);
  Matrix w(num_agents_, num_agents_);
  for (int i = 0; i < num_agents_; ++i) {
    if (in[i].empty()) {
      throw InvalidScheduleError("agent " + std::to_string(i + 1) +
                                 " has no in-neighbour at t=" +
                                 std::to_string(t));
    }
    if (require_self_loops_ &&
        std::find(in[i].begin(), in[i].end(), i) == in[i].end()) {
      throw InvalidScheduleError("agent " + std::to_string(i + 1) +
                                 " lacks a self-loop at t=" +
                                 std::to_string(t));
    }
    const double weight = 1.0 / static_cast<double>(in[i].size());
    for (int j : in[i]) w(i, j) = weight;
  }
  return w;
}

bool IsStronglyConnected(int num_agents, std::span<const Edge> edges) {
  if (num_agents <= 1) return true;
  const auto fwd = Reach(num_agents, edges, true);
  const auto bwd = Reach(num_agents, edges, false);
  return std::all_of(fwd.begin(), fwd.end(), [](bool b) { return b; }) &&
         std::all_of(bwd.begin(), bwd.end(), [](bool b) { return b; });
}

ConnectivityReport ValidateBConnectivity(const GraphSchedule& schedule, int b,
                                         int horizon) {
  if (b < 1) throw DomainError("B must be >= 1");
  if (horizon < b) throw DomainError("horizon must be >= B");
  ConnectivityReport report;
  for (int k = 0; (k + 1) * b <= horizon; ++k) {
    std::vector<Edge> window;
    for (int t = k * b; t < (k + 1) * b; ++t) {
      const auto edges = schedule.EdgesAt(t);
      window.insert(window.end(), edges.begin(), edges.end());
    }
    if (!IsStronglyConnected(schedule.num_agents(), window)) {
      report.connected = false;
      report.first_violating_window = k;
      report.window_begin = k * b;
      report.window_end = (k + 1) * b - 1;
      return report;
    }
  }
  return report;
}

std::vector<Matrix> SplitByDelay(const Matrix& weights,
                                 const DelaySlice& delays, int tau_max) {
  const std::size_t n = weights.rows();
  std::vector<Matrix> blocks(tau_max + 1, Matrix(n, n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double w = weights(i, j);
      if (w == 0.0) continue;
      const int r = delays(static_cast<int>(i), static_cast<int>(j));
      if (r < 0 || r > tau_max) {
        throw OutOfRangeError("delay tau_" + std::to_string(i + 1) +
                              std::to_string(j + 1) + " = " +
                              std::to_string(r) + " exceeds tau_max = " +
                              std::to_string(tau_max));
      }
      blocks[r](i, j) = w;
    }
  }
  return blocks;
}

Matrix AssembleAugmented(std::span<const Matrix> top_blocks) {
  const std::size_t depth = top_blocks.size();
  const std::size_t n = top_blocks.front().rows();
  Matrix out(n * depth, n * depth);
  for (std::size_t r = 0; r < depth; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out(i, r * n + j) = top_blocks[r](i, j);
    }
  }
  // Virtual row block r (r >= 1) copies block r - 1.
  for (std::size_t r = 1; r < depth; ++r) {
    for (std::size_t i = 0; i < n; ++i) out(r * n + i, (r - 1) * n + i) = 1.0;
  }
  return out;
}

Matrix Augment(const Matrix& weights, const DelaySlice& delays, int tau_max) {
  if (tau_max == 0) {
    SplitByDelay(weights, delays, 0);  // bound check only
    return weights;
  }
  const auto blocks = SplitByDelay(weights, delays, tau_max);
  return AssembleAugmented(blocks);
}

double SelfWeightFloor(const GraphSchedule& schedule, int horizon) {
  const int n = schedule.num_agents();
  Matrix y = Matrix::Identity(n);
  double floor = 1.0;
  for (int t = 0;; ++t) {
    for (int i = 0; i < n; ++i) floor = std::min(floor, y(i, i));
    if (t == horizon) break;
    y = schedule.WeightsAt(t) * y;
  }
  return floor;
}

MixingDiagnostics ComputeMixingDiagnostics(const GraphSchedule& schedule,
                                           const DelaySchedule& delays,
                                           int horizon) {
  if (horizon < 8) throw DomainError("mixing diagnostics need horizon >= 8");
  const int n = schedule.num_agents();
  std::vector<Matrix> augmented;
  augmented.reserve(horizon);
  for (int t = 0; t < horizon; ++t) {
    augmented.push_back(Augment(schedule.WeightsAt(t),
                                delays.CommSlice(n, t), delays.tau_max()));
  }
  const std::size_t dim = augmented.front().rows();
  const int half = horizon / 2;

  MixingDiagnostics out;
  out.pi_trace.resize(half + 1);
  // Backward sweep: P_s = W'(H-1) ... W'(s). Its rows approach pi(s).
  Matrix p = Matrix::Identity(dim);
  double spread_at_half = 0.0;
  for (int s = horizon - 1; s >= 0; --s) {
    p = p * augmented[s];
    if (s > half) continue;
    Vec pi(dim, 0.0);
    double spread = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      double lo = p(0, j), hi = p(0, j), sum = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        lo = std::min(lo, p(i, j));
        hi = std::max(hi, p(i, j));
        sum += p(i, j);
      }
      pi[j] = sum / static_cast<double>(dim);
      spread = std::max(spread, hi - lo);
    }
    if (s == half) spread_at_half = spread;
    if (s == 0) out.pi_residual = spread;
    out.pi_trace[s] = std::move(pi);
  }
  if (spread_at_half > 1e-6) {
    throw DiagnosticError(
        "backward products did not reach a rank-one limit within the horizon "
        "(row spread " + std::to_string(spread_at_half) + ")");
  }

  out.min_pi = 1.0;
  out.min_real_pi = 1.0;
  for (const Vec& pi : out.pi_trace) {
    for (std::size_t j = 0; j < dim; ++j) {
      out.min_pi = std::min(out.min_pi, pi[j]);
      if (j < static_cast<std::size_t>(n)) {
        out.min_real_pi = std::min(out.min_real_pi, pi[j]);
      }
    }
  }

  // Forward products W'(k-1) ... W'(0) against pi(0).
  const Vec& pi0 = out.pi_trace[0];
  const double floor = std::max(1e-14, 10.0 * out.pi_residual);
  Matrix q = Matrix::Identity(dim);
  std::vector<double> xs, ys;
  for (int k = 1; k <= half; ++k) {
    q = augmented[k - 1] * q;
    double dev = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        dev = std::max(dev, std::abs(q(i, j) - pi0[j]));
      }
    }
    out.deviations.push_back(dev);
    if (dev > floor) {
      xs.push_back(static_cast<double>(k));
      ys.push_back(std::log(dev));
    }
  }
  out.fit_points = static_cast<int>(xs.size());
  if (xs.size() < 2) {
    // Consensus reached (to the floor) within a step; no decay to fit.
    out.lambda_hat = 0.0;
    out.c_hat = out.deviations.empty() ? 0.0 : out.deviations.front();
    out.r_squared = 1.0;
    return out;
  }
  const LineFit fit = FitLine(xs, ys);
  out.lambda_hat = std::exp(fit.slope);
  out.c_hat = std::exp(fit.intercept);
  out.r_squared = fit.r_squared;
  return out;
}

}  // namespace dpdda::graph
