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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
// if any selected criterion fails. Usage: dpdda_acceptance [--criterion N].

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "config.h"
#include "dpdda/engine.h"
#include "dpdda/errors.h"
#include "dpdda/graph.h"
#include "dpdda/metrics.h"
#include "dpdda/nash_cournot.h"
#include "dpdda/privacy.h"
#include "dpdda/random.h"
#include "presets.h"
#include "test_support.h"

namespace dpdda::acceptance {
namespace {

using engine::RunConfig;
using engine::Simulation;
using engine::Trajectory;
using metrics::LossKind;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

RunConfig FromPreset(const std::string& name) {
  return cli::ToRunConfig(cli::ParseScenario(cli::PresetDocument(name)));
}

double MaxAbs(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double L1(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return s;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// Strongly connected random digraph: a ring plus random chords and self-loops.
graph::GraphSchedule RandomSchedule(int v, SplitMix64& gen) {
  std::vector<graph::Edge> edges;
  for (int i = 0; i < v; ++i) edges.push_back({i, (i + 1) % v});
  for (int i = 0; i < v; ++i) {
    for (int j = 0; j < v; ++j) {
      if (i != j && j != (i + 1) % v && UniformOpen01(gen) < 0.3) {
        edges.push_back({i, j});
      }
    }
  }
  return graph::GraphSchedule(v, graph::StaticRule{testing::WithSelfLoops(edges, v)});
}

// 1. Augmented-oracle equivalence.
void AugmentedEquivalence(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  SplitMix64 gen(20240601);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int v = (k % 2 == 0) ? 3 : 5;
    const int tau = 1 + k % 3;
    const bool noisy = (k / 2) % 2 == 0;
    game::NashCournotParams p;
    p.lower.resize(v);
    p.upper.resize(v);
    RunConfig c;
    c.game = std::make_shared<game::NashCournot>(p);
    c.schedule = RandomSchedule(v, gen);
    c.delays = testing::UniformDelays(tau, 0, tau, gen());
    c.horizon = 100;
    c.gamma = 0.01 + 2.0 * UniformOpen01(gen);
    c.seed = gen();
    for (int i = 0; i < v; ++i) {
      const double lo = p.lower[i], hi = p.upper[i];
      c.initial_actions.push_back({lo + (hi - lo) * UniformOpen01(gen)});
    }
    if (noisy) c.noise = testing::EpsilonNoise(0.2);
    const Trajectory a = engine::Run(c);
    const Trajectory b = engine::RunAugmentedReference(c);
    for (std::size_t r = 0; r < a.records.size(); ++r) {
      worst = std::max({worst, MaxAbs(a.records[r].b, b.records[r].b),
                        MaxAbs(a.records[r].x, b.records[r].x),
                        MaxAbs(a.records[r].v, b.records[r].v)});
    }
  }
  const double secs = Seconds(start);
  out.detail << "max deviation " << worst << " over 20 configs, " << secs << " s. ";
  out.Require(worst <= 1e-9, "deviation <= 1e-9");
  out.Require(secs < 30.0, "runtime < 30 s");
}

// 2. Regret sublinearity.
void RegretSublinearity(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> per_round;
  std::vector<double> totals;
  for (int horizon : {250, 1000, 4000}) {
    RunConfig c = FromPreset("fig2-baseline");
    c.noise = privacy::NoiseConfig{};
    c.delays = graph::DelaySchedule();
    c.horizon = horizon;
    const Trajectory tr = engine::Run(c);
    const auto path = metrics::SolveEquilibriumPath(*c.game, horizon);
    const auto report = metrics::DynamicRegret(*c.game, tr, path);
    totals.push_back(report.total());
    per_round.push_back(report.total() / horizon);
    out.detail << "R(" << horizon << ")/T=" << per_round.back() << " ";
  }
  const double secs = Seconds(start);
  out.detail << "ratio R(4000)/R(1000)=" << totals[2] / totals[1] << ", " << secs << " s. ";
  out.Require(per_round[0] > per_round[1] && per_round[1] > per_round[2],
              "R(T)/T strictly decreasing");
  out.Require(totals[2] / totals[1] < 4.0, "R(4000)/R(1000) < 4");
  out.Require(secs < 10.0, "runtime < 10 s");
}

struct SeriesCheck {
  bool all_meet = true;
  double worst_rel_std = 0.0;
  double worst_slope = 0.0;
};

SeriesCheck CheckSeries(const Trajectory& tr, LossKind kind,
                        const metrics::StabilizationCriterion& crit) {
  SeriesCheck s;
  for (const auto& series : metrics::AverageLoss(tr, kind)) {
    const auto stat = metrics::StabilizationStat(series, crit.fraction);
    s.all_meet = s.all_meet && metrics::Meets(stat, crit);
    s.worst_rel_std = std::max(s.worst_rel_std, stat.rel_std);
    s.worst_slope = std::max(s.worst_slope, std::abs(stat.slope));
  }
  return s;
}

void Describe(Outcome& out, const std::string& label, const SeriesCheck& s) {
  out.detail << label << ": rel_std<=" << s.worst_rel_std
             << " |slope|<=" << s.worst_slope << (s.all_meet ? " ok; " : " no; ");
}

bool AllInBoxes(const RunConfig& c, const Trajectory& tr) {
  for (const auto& r : tr.records) {
    if (!c.game->box(r.agent).Contains(r.x)) return false;
  }
  return true;
}

// 3. Baseline reproduction.
void BaselineReproduction(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  const RunConfig c = FromPreset("fig2-baseline");
  const Trajectory tr = engine::Run(c);
  const metrics::StabilizationCriterion crit;
  const SeriesCheck truth = CheckSeries(tr, LossKind::kTrue, crit);
  const SeriesCheck local = CheckSeries(tr, LossKind::kLocal, crit);
  const double secs = Seconds(start);
  Describe(out, "true-aggregate loss", truth);
  Describe(out, "local-estimate loss (informational)", local);
  out.detail << secs << " s. ";
  out.Require(truth.all_meet, "every average-loss series stabilizes");
  out.Require(AllInBoxes(c, tr), "actions within boxes");
  out.Require(secs < 5.0, "runtime < 5 s");
}

// Time at which every agent's series satisfies the criterion from then on.
std::optional<int> RunStabilizationTime(const Trajectory& tr, LossKind kind) {
  int worst = 0;
  for (const auto& series : metrics::AverageLoss(tr, kind)) {
    const auto t = metrics::StabilizationTime(series, {});
    if (!t) return std::nullopt;
    worst = std::max(worst, *t);
  }
  return worst;
}

std::string Show(const std::optional<int>& t) {
  return t ? std::to_string(*t) : std::string("never");
}

double MaxActionGap(const Trajectory& a, const Trajectory& b) {
  double gap = 0.0;
  for (std::size_t r = 0; r < a.records.size(); ++r) {
    gap = std::max(gap, MaxAbs(a.records[r].x, b.records[r].x));
  }
  return gap;
}

double MeanTailStd(const Trajectory& tr, LossKind kind) {
  double sum = 0.0;
  const auto all = metrics::AverageLoss(tr, kind);
  for (const auto& series : all) sum += metrics::StabilizationStat(series, 0.1).tail_std;
  return sum / static_cast<double>(all.size());
}

// 4. Scenario ordering.
void ScenarioOrdering(Outcome& out) {
  const Trajectory base = engine::Run(FromPreset("fig2-baseline"));
  const Trajectory fast = engine::Run(FromPreset("fig3-high-lr"));
  const Trajectory tight = engine::Run(FromPreset("fig4-tight-privacy"));

  const auto t_base = RunStabilizationTime(base, LossKind::kTrue);
  const auto t_fast = RunStabilizationTime(fast, LossKind::kTrue);
  out.detail << "stabilization time gamma=1: " << Show(t_base)
             << ", gamma=10: " << Show(t_fast) << "; ";
  out.detail << "local-loss stabilization time gamma=1: "
             << Show(RunStabilizationTime(base, LossKind::kLocal)) << ", gamma=10: "
             << Show(RunStabilizationTime(fast, LossKind::kLocal))
             << " (informational); max action gap between the two runs "
             << MaxActionGap(base, fast) << "; ";
  const bool earlier = t_fast && (!t_base || *t_fast < *t_base);
  out.Require(earlier, "gamma x10 stabilizes strictly earlier");

  const double d02 = MeanTailStd(base, LossKind::kLocal);
  const double d01 = MeanTailStd(tight, LossKind::kLocal);
  out.detail << "local-loss tail std eps=0.2: " << d02 << ", eps=0.1: " << d01
             << "; true-loss tail std eps=0.2: " << MeanTailStd(base, LossKind::kTrue)
             << ", eps=0.1: " << MeanTailStd(tight, LossKind::kTrue) << ". ";
  out.Require(d01 > d02, "eps=0.1 tail dispersion exceeds eps=0.2");
}

// 5. Delay robustness.
void DelayRobustness(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  metrics::StabilizationCriterion crit;
  crit.max_rel_std = 0.10;
  for (const char* preset : {"fig6-random-delays", "fig7-random-delays-private"}) {
    const RunConfig c = FromPreset(preset);
    const Trajectory tr = engine::Run(c);
    const SeriesCheck truth = CheckSeries(tr, LossKind::kTrue, crit);
    Describe(out, std::string(preset) + " true-aggregate loss", truth);
    Describe(out, std::string(preset) + " local-estimate loss (informational)",
             CheckSeries(tr, LossKind::kLocal, crit));
    out.Require(truth.all_meet, std::string(preset) + " series stabilize");
    out.Require(AllInBoxes(c, tr), std::string(preset) + " actions within boxes");
  }
  const double secs = Seconds(start);
  out.detail << secs << " s. ";
  out.Require(secs < 10.0, "runtime < 10 s");
}

// Runs the base and a one-round perturbed game in lockstep through round t0
// and returns both dual states after the step that consumes round t0.
std::pair<std::vector<Vec>, std::vector<Vec>> AdjacentDuals(
    const RunConfig& base, int agent, int t0, const Vec& c) {
  RunConfig other = base;
  other.game = std::make_shared<testing::PerturbedGame>(base.game, agent, t0, c);
  Simulation a(base), b(other);
  for (int t = 0; t <= t0; ++t) {
    a.Step();
    b.Step();
  }
  std::vector<Vec> ba, bb;
  for (int i = 0; i < a.num_agents(); ++i) {
    ba.push_back(a.agent(i).b);
    bb.push_back(b.agent(i).b);
  }
  return {ba, bb};
}

// 6. Privacy ledger exactness and the density-ratio check.
void PrivacyLedger(Outcome& out) {
  RunConfig c = FromPreset("fig2-baseline");
  c.horizon = 100;
  const Trajectory tr = engine::Run(c);
  out.detail << "epsilon_hat=" << tr.summary.epsilon_hat << " over "
             << tr.ledger.records().size() << " steps; ";
  out.Require(tr.summary.epsilon_hat == 20.0, "epsilon_hat == 20");
  out.Require(privacy::PrivacyLedger::Recompute(tr.ledger.records()) == 20.0,
              "recomputed epsilon_hat == 20");

  // Worst-case adjacent release at sampled steps: b' sits exactly Delta_t
  // away from the released dual state in l1.
  const double delta = tr.summary.sensitivity;
  const double sigma = tr.summary.sigma;
  SplitMix64 gen(606);
  double worst = -std::numeric_limits<double>::infinity();
  for (int t : {1, 10, 25, 50, 100}) {
    for (int i = 0; i < tr.num_agents; ++i) {
      const Vec& b = tr.at(t, i).b;
      Vec b_prime = b;
      b_prime[0] += (UniformOpen01(gen) < 0.5 ? -delta : delta);
      const auto probes = privacy::LaplaceProbePoints(b, sigma, 10000, gen);
      const auto r = privacy::DensityRatioCheck(b, b_prime, sigma, probes);
      worst = std::max(worst, r.max_log_ratio);
    }
  }
  out.detail << "Delta/sigma=" << delta / sigma << ", max log ratio=" << worst << ". ";
  out.Require(worst <= delta / sigma * (1.0 + 1e-12), "log ratio <= Delta/sigma");
}

// 7. Sensitivity bound.
void SensitivityBound(Outcome& out) {
  RunConfig c = FromPreset("fig2-baseline");
  c.noise = privacy::NoiseConfig{};
  c.horizon = 200;
  const double big_l = c.game->constants().gradient_bound;
  const int m = c.game->dim();
  const double theta = 1.0 / engine::Run(c).summary.min_self_weight;
  const double bound = 2.0 * big_l * theta * std::sqrt(static_cast<double>(m));
  SplitMix64 gen(707);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int agent = UniformInt(gen, 0, 4);
    const int t0 = UniformInt(gen, 0, c.horizon - 1);
    const Vec pert = {big_l * (2.0 * UniformOpen01(gen) - 1.0)};
    const auto [b, b_prime] = AdjacentDuals(c, agent, t0, pert);
    for (std::size_t i = 0; i < b.size(); ++i) worst = std::max(worst, L1(b[i], b_prime[i]));
  }
  out.detail << "max deviation " << worst << " vs 2 L theta sqrt(m) = " << bound
             << " (theta=" << theta << "). ";
  out.Require(worst <= bound, "deviation <= 2 L theta sqrt(m)");
}

// 8. Structural invariants.
void StructuralInvariants(Outcome& out) {
  double worst_row = 0.0;
  double worst_aug = 0.0;
  for (const char* preset : {"fig2-baseline", "fig5-fixed-delay", "fig6-random-delays"}) {
    const RunConfig c = FromPreset(preset);
    const int n = c.game->num_agents();
    for (int t = 0; t < c.horizon; ++t) {
      const Matrix w = c.schedule.WeightsAt(t);
      const Matrix aug = graph::Augment(w, c.delays.CommSlice(n, t), c.delays.tau_max());
      for (std::size_t i = 0; i < w.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < w.cols(); ++j) s += w(i, j);
        worst_row = std::max(worst_row, std::abs(s - 1.0));
      }
      for (std::size_t i = 0; i < aug.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < aug.cols(); ++j) s += aug(i, j);
        worst_aug = std::max(worst_aug, std::abs(s - 1.0));
      }
    }
  }
  out.detail << "row-sum error W " << worst_row << ", W' " << worst_aug << "; ";
  out.Require(worst_row <= 1e-12 && worst_aug <= 1e-12, "row-stochastic within 1e-12");

  const Trajectory tr = engine::Run(FromPreset("fig2-baseline"));
  double worst_avg = 0.0;
  for (int i = 0; i < tr.num_agents; ++i) {
    double sum = 0.0;
    worst_avg = std::max(worst_avg, MaxAbs(tr.at(0, i).x_hat, tr.at(0, i).x));
    for (int t = 1; t <= tr.horizon; ++t) {
      sum += tr.at(t, i).x[0];
      worst_avg = std::max(worst_avg, std::abs(tr.at(t, i).x_hat[0] - sum / t));
    }
  }
  out.detail << "running-average error " << worst_avg << "; ";
  out.Require(worst_avg <= 1e-12, "running-average identity within 1e-12");

  RunConfig cons = FromPreset("fig2-baseline");
  cons.noise = privacy::NoiseConfig{};
  cons.schedule = testing::CompleteSchedule(5);
  cons.gamma = 0.0005;
  cons.horizon = 1000;
  const Trajectory ct = engine::Run(cons);
  double worst_mass = 0.0;
  for (int t = 0; t <= ct.horizon; ++t) {
    double v = 0.0, psi = 0.0;
    for (int i = 0; i < 5; ++i) {
      v += ct.at(t, i).v[0];
      psi += ct.at(t, i).x_hat[0];
    }
    worst_mass = std::max(worst_mass, std::abs(v - psi));
  }
  out.detail << "aggregate conservation error " << worst_mass << "; ";
  out.Require(worst_mass <= 1e-10, "aggregate conservation (round-off only)");

  RunConfig dc = FromPreset("fig6-random-delays");
  dc.horizon = 500;
  Simulation sim(dc);
  std::set<std::uint64_t> ids;
  bool once = true;
  std::uint64_t delivered = 0;
  for (int t = 0; t < dc.horizon; ++t) {
    sim.Step();
    for (const auto& e : sim.last_deliveries()) {
      once = once && ids.insert(e.id).second && e.arrival_time == t &&
             e.arrival_time - e.send_time == dc.delays.Comm(e.to, e.from, e.send_time);
    }
    delivered += sim.last_deliveries().size();
  }
  const bool books = delivered == sim.messages_delivered() &&
                     sim.messages_sent() == sim.messages_delivered() + sim.messages_in_flight();
  out.detail << sim.messages_sent() << " sent, " << sim.messages_delivered()
             << " delivered, " << sim.messages_in_flight() << " in flight. ";
  out.Require(once && books, "exactly-once delivery");
}

// 9. Gradient and monotonicity oracles.
void GradientOracles(Outcome& out) {
  const game::NashCournot g;
  const int v = g.num_agents();
  SplitMix64 gen(909);
  auto random_profile = [&] {
    Vec x(v);
    for (int i = 0; i < v; ++i) {
      const auto& b = g.box(i);
      x[i] = b.lower[0] + (b.upper[0] - b.lower[0]) * UniformOpen01(gen);
    }
    return x;
  };
  double worst_fd = 0.0;
  const double h = 1e-4;
  for (int k = 0; k < 100; ++k) {
    const int t = UniformInt(gen, 0, 2000);
    const Vec x = random_profile();
    const Vec grad = g.Pseudogradient(t, x);
    for (int i = 0; i < v; ++i) {
      Vec up = x, down = x;
      up[i] += h;
      down[i] -= h;
      const double fd = (g.CostAgainst(i, t, Vec{up[i]}, up) -
                         g.CostAgainst(i, t, Vec{down[i]}, down)) / (2.0 * h);
      worst_fd = std::max(worst_fd, std::abs(fd - grad[i]));
    }
  }
  out.detail << "finite-difference error " << worst_fd << "; ";
  out.Require(worst_fd <= 1e-6, "finite differences within 1e-6");

  double mu = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 1000; ++k) {
    const int t = UniformInt(gen, 0, 2000);
    const Vec x = random_profile(), y = random_profile();
    const Vec fx = g.Pseudogradient(t, x), fy = g.Pseudogradient(t, y);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < v; ++i) {
      num += (fx[i] - fy[i]) * (x[i] - y[i]);
      den += (x[i] - y[i]) * (x[i] - y[i]);
    }
    if (den > 0.0) mu = std::min(mu, num / den);
  }
  out.detail << "empirical mu " << mu << "; ";
  out.Require(mu >= 1.0 - 1e-9, "mu >= 1 - 1e-9");

  double worst_ratio = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto& box = g.box(UniformInt(gen, 0, v - 1));
    const Vec u = {200.0 * (2.0 * UniformOpen01(gen) - 1.0)};
    const Vec w = {200.0 * (2.0 * UniformOpen01(gen) - 1.0)};
    const double eta = 0.001 + 2.0 * UniformOpen01(gen);
    const double lhs = std::abs(engine::Project(u, eta, box)[0] -
                                engine::Project(w, eta, box)[0]);
    const double rhs = eta * std::abs(u[0] - w[0]);
    if (rhs > 0.0) worst_ratio = std::max(worst_ratio, lhs / rhs);
  }
  out.detail << "max |P(u)-P(v)| / (eta |u-v|) = " << worst_ratio << ". ";
  out.Require(worst_ratio <= 1.0 + 1e-12, "projection nonexpansive");
}

// 10. NE oracle correctness.
void EquilibriumOracle(Outcome& out) {
  const game::NashCournot g;
  const metrics::OracleOptions opts;
  const auto sol = metrics::SolveEquilibrium(g, 0, opts);
  const Vec corner = {5.0, 10.0, 8.0, 12.0, 6.0};
  const double corner_err = MaxAbs(sol.x_star, corner);
  out.detail << "corner error " << corner_err << "; ";
  out.Require(corner_err <= 1e-8, "t=0 solution is the box corner");

  SplitMix64 gen(1010);
  double spread = 0.0;
  for (int k = 0; k < 10; ++k) {
    metrics::OracleOptions o = opts;
    Vec s(5);
    for (int i = 0; i < 5; ++i) {
      const auto& b = g.box(i);
      s[i] = b.lower[0] + (b.upper[0] - b.lower[0]) * UniformOpen01(gen);
    }
    o.start = s;
    spread = std::max(spread, MaxAbs(metrics::SolveEquilibrium(g, 0, o).x_star, sol.x_star));
  }
  out.detail << "random-start spread " << spread << "; ";
  out.Require(spread <= 10.0 * opts.tol, "random starts agree within 10 tol");

  const std::vector<double> cs = {3.0, -1.0, 2.0, 0.5};
  const testing::LinearToyGame toy(cs, 100.0);
  double total = 0.0;
  for (double c : cs) total += c;
  const double aggregate = total / (cs.size() + 1.0);
  const auto toy_sol = metrics::SolveEquilibrium(toy, 0, opts);
  double toy_err = 0.0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    toy_err = std::max(toy_err, std::abs(toy_sol.x_star[i] - (cs[i] - aggregate)));
  }
  out.detail << "toy closed-form error " << toy_err << ". ";
  out.Require(toy_err <= 1e-10, "toy game matches closed form");
}

// 11. Mixing diagnostics.
void Mixing(Outcome& out) {
  const RunConfig c = FromPreset("fig2-baseline");
  graph::CommDelaySpec comm;
  comm.base = 2;
  const graph::DelaySchedule delays(2, comm, graph::FeedbackDelaySpec{}, c.seed);
  const auto d = graph::ComputeMixingDiagnostics(c.schedule, delays, 400);
  out.detail << "lambda_hat=" << d.lambda_hat << " R^2=" << d.r_squared
             << " min pi=" << d.min_pi << " (real agents " << d.min_real_pi << "). ";
  out.Require(d.lambda_hat > 0.0 && d.lambda_hat < 1.0, "lambda_hat in (0, 1)");
  out.Require(d.r_squared > 0.95, "R^2 > 0.95");
  out.Require(d.min_pi > 0.0, "min pi > 0");
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Outcome&)> body;
};

}  // namespace
}  // namespace dpdda::acceptance

int main(int argc, char** argv) {
  using namespace dpdda::acceptance;
  const std::vector<Criterion> criteria = {
      {1, "augmented-oracle equivalence", AugmentedEquivalence},
      {2, "regret sublinearity", RegretSublinearity},
      {3, "baseline reproduction", BaselineReproduction},
      {4, "scenario ordering", ScenarioOrdering},
      {5, "delay robustness", DelayRobustness},
      {6, "privacy ledger exactness", PrivacyLedger},
      {7, "sensitivity bound", SensitivityBound},
      {8, "structural invariants", StructuralInvariants},
      {9, "gradient and monotonicity oracles", GradientOracles},
      {10, "equilibrium oracle correctness", EquilibriumOracle},
      {11, "mixing diagnostics", Mixing},
  };
  int only = 0;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    if (arg == "--criterion" && a + 1 < argc) {
      only = std::atoi(argv[++a]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome out;
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "[exception: " << e.what() << "]";
    }
    std::printf("%s criterion %d (%s): %s\n", out.pass ? "PASS" : "FAIL", c.id,
                c.name, out.detail.str().c_str());
    failures += !out.pass;
  }
  return failures == 0 ? 0 : 1;
}
