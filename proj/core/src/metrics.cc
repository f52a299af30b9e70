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

#include "dpdda/metrics.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpdda/errors.h"
#include "dpdda/random.h"

namespace dpdda::metrics {
namespace {

Vec ProjectProfile(const game::AggregativeGame& game,
                   std::span<const double> x) {
  const int m = game.dim();
  Vec out(x.size());
  for (int i = 0; i < game.num_agents(); ++i) {
    const Vec c = game.box(i).Clamp(game::AgentBlock(x, i, m));
    std::copy(c.begin(), c.end(), out.begin() + static_cast<long>(i) * m);
  }
  return out;
}

Vec SamplePoint(const game::AggregativeGame& game, SplitMix64& gen) {
  Vec x;
  for (int i = 0; i < game.num_agents(); ++i) {
    const auto& box = game.box(i);
    for (int k = 0; k < box.dim(); ++k) {
      x.push_back(box.lower[k] +
                  (box.upper[k] - box.lower[k]) * UniformOpen01(gen));
    }
  }
  return x;
}

}  // namespace

double EstimatePseudogradientLipschitz(const game::AggregativeGame& game,
                                       int t, int samples,
                                       std::uint64_t seed) {
  SplitMix64 gen(SubstreamSeed(seed, StreamPurpose::kTest, t, 0));
  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Vec a = SamplePoint(game, gen);
    const Vec b = SamplePoint(game, gen);
    Vec diff_x(a.size()), diff_f(a.size());
    const Vec fa = game.Pseudogradient(t, a);
    const Vec fb = game.Pseudogradient(t, b);
    for (std::size_t j = 0; j < a.size(); ++j) {
      diff_x[j] = a[j] - b[j];
      diff_f[j] = fa[j] - fb[j];
    }
    const double nx = Norm2(diff_x);
    if (nx > 0.0) best = std::max(best, Norm2(diff_f) / nx);
  }
  return 1.5 * best;
}

EquilibriumSolution SolveEquilibrium(const game::AggregativeGame& game, int t,
                                     const OracleOptions& options) {
  if (!(options.tol > 0.0)) throw OutOfRangeError("oracle tol must be > 0");
  const auto constants = game.constants();
  const double mu = constants.monotonicity;
  if (!(mu > 0.0)) throw DiagnosticError("oracle requires mu > 0");
  const double lf = constants.pseudogradient_lipschitz.value_or(
      EstimatePseudogradientLipschitz(game, t, options.lipschitz_samples,
                                      options.seed));
  if (!(lf >= mu)) {
    throw DiagnosticError("pseudogradient Lipschitz constant " +
                          std::to_string(lf) + " below mu " +
                          std::to_string(mu));
  }
  const double alpha = mu / (lf * lf);
  // Contraction factor of x -> clamp(x - alpha F(x)) at this alpha.
  const double q = std::sqrt(std::max(0.0, 1.0 - (mu * mu) / (lf * lf)));
  const int v = game.num_agents();
  const int m = game.dim();

  Vec x;
  if (options.start) {
    if (static_cast<int>(options.start->size()) != v * m) {
      throw OutOfRangeError("oracle start has wrong size");
    }
    x = ProjectProfile(game, *options.start);
  } else {
    for (int i = 0; i < v; ++i) {
      const auto& box = game.box(i);
      for (int k = 0; k < m; ++k) {
        x.push_back(0.5 * (box.lower[k] + box.upper[k]));
      }
    }
  }

  EquilibriumSolution sol;
  sol.t = t;
  sol.step = alpha;
  double prev_step = INFINITY;
  for (int it = 0; it <= options.max_iterations; ++it) {
    const Vec g = game.Pseudogradient(t, x);
    Vec trial(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) trial[j] = x[j] - alpha * g[j];
    Vec next = ProjectProfile(game, trial);
    Vec diff(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) diff[j] = x[j] - next[j];
    const double r = Norm2(diff);
    // The projected map is a contraction, so step lengths cannot grow.
    if (r > prev_step * (1.0 + 1e-9) + 1e-14) {
      throw DiagnosticError(
          "oracle iteration is not contracting at iteration " +
          std::to_string(it) + " (step " + std::to_string(r) +
          " after " + std::to_string(prev_step) + "; mu=" +
          std::to_string(mu) + ", L_F=" + std::to_string(lf) + ")");
    }
    if (r == 0.0 || (it > 0 && r * q <= options.tol * (1.0 - q))) {
      sol.x_star = std::move(next);
      sol.residual = r;
      sol.iterations = it;
      return sol;
    }
    prev_step = r;
    x = std::move(next);
  }
  throw DiagnosticError("oracle did not reach tol within " +
                        std::to_string(options.max_iterations) +
                        " iterations");
}

std::vector<EquilibriumSolution> SolveEquilibriumPath(
    const game::AggregativeGame& game, int count,
    const OracleOptions& options) {
  std::vector<EquilibriumSolution> out;
  out.reserve(std::max(count, 0));
  OracleOptions opts = options;
  for (int t = 0; t < count; ++t) {
    out.push_back(SolveEquilibrium(game, t, opts));
    opts.start = out.back().x_star;
  }
  return out;
}

RegretReport DynamicRegret(const game::AggregativeGame& game,
                           const engine::Trajectory& trajectory,
                           std::span<const EquilibriumSolution> solutions) {
  const int horizon = trajectory.horizon;
  if (static_cast<int>(solutions.size()) < horizon) {
    throw OutOfRangeError("regret needs " + std::to_string(horizon) +
                          " oracle solutions, got " +
                          std::to_string(solutions.size()));
  }
  const int v = game.num_agents();
  if (trajectory.num_agents != v) {
    throw OutOfRangeError("trajectory and game disagree on agent count");
  }
  RegretReport rep;
  rep.per_agent.assign(v, {});
  std::vector<double> agent_sum(v, 0.0);
  double total = 0.0;
  for (int t = 0; t < horizon; ++t) {
    const auto& sol = solutions[t];
    if (sol.t != t) {
      throw OutOfRangeError("oracle solution " + std::to_string(t) +
                            " is for round " + std::to_string(sol.t));
    }
    double gap = 0.0;
    for (int i = 0; i < v; ++i) {
      const auto& rec = trajectory.at(t, i);
      const double played = game.CostAgainst(i, t, rec.x, sol.x_star);
      const double eq = game.CostAgainst(
          i, t, game::AgentBlock(sol.x_star, i, game.dim()), sol.x_star);
      agent_sum[i] += played - eq;
      rep.per_agent[i].push_back(agent_sum[i]);
      gap += played - eq;
    }
    total += gap;
    rep.gap.push_back(gap);
    rep.cumulative.push_back(total);
    rep.cumulative_mean.push_back(total / v);
  }
  return rep;
}

std::vector<double> RunningMean(std::span<const double> losses) {
  std::vector<double> out;
  out.reserve(losses.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < losses.size(); ++k) {
    sum += losses[k];
    out.push_back(sum / static_cast<double>(k + 1));
  }
  return out;
}

std::vector<std::vector<double>> AverageLoss(
    const engine::Trajectory& trajectory, LossKind kind) {
  std::vector<std::vector<double>> out(trajectory.num_agents);
  for (int i = 0; i < trajectory.num_agents; ++i) {
    std::vector<double> losses;
    losses.reserve(trajectory.horizon);
    for (int t = 1; t <= trajectory.horizon; ++t) {
      const auto& r = trajectory.at(t, i);
      losses.push_back(kind == LossKind::kLocal ? r.loss_local : r.loss_true);
    }
    out[i] = RunningMean(losses);
  }
  return out;
}

Stabilization StabilizationStat(std::span<const double> series,
                                double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw OutOfRangeError("tail fraction must lie in (0, 1]");
  }
  const double n_total = static_cast<double>(series.size());
  if (n_total < 10.0 / fraction) {
    throw OutOfRangeError("series of length " +
                          std::to_string(series.size()) +
                          " is too short for tail fraction " +
                          std::to_string(fraction));
  }
  const int n = std::max(2, static_cast<int>(std::floor(fraction * n_total)));
  const auto tail = series.subspan(series.size() - n);

  Stabilization s;
  s.tail_length = n;
  double mean = 0.0;
  for (double v : tail) mean += v;
  mean /= n;
  double var = 0.0, sxy = 0.0, sxx = 0.0;
  const double xbar = 0.5 * (n - 1);
  for (int k = 0; k < n; ++k) {
    const double d = tail[k] - mean;
    var += d * d;
    const double dx = k - xbar;
    sxy += dx * d;
    sxx += dx * dx;
  }
  s.tail_mean = mean;
  s.tail_std = std::sqrt(var / n);
  s.slope = sxy / sxx;
  if (std::abs(mean) <= 1e-12) {
    s.degenerate = true;
    s.rel_std = s.tail_std;
  } else {
    s.rel_std = s.tail_std / std::abs(mean);
  }
  return s;
}

bool Meets(const Stabilization& s, const StabilizationCriterion& c) {
  return s.rel_std < c.max_rel_std && std::abs(s.slope) < c.max_abs_slope;
}

std::optional<int> StabilizationTime(std::span<const double> series,
                                     const StabilizationCriterion& c) {
  const int min_len = static_cast<int>(std::ceil(10.0 / c.fraction));
  const int n = static_cast<int>(series.size());
  if (n < min_len) return std::nullopt;
  std::optional<int> earliest;
  for (int len = n; len >= min_len; --len) {
    if (!Meets(StabilizationStat(series.first(len), c.fraction), c)) break;
    earliest = len;
  }
  return earliest;
}

}  // namespace dpdda::metrics
