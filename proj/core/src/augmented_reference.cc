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

// Reference executor over the augmented network. It shares no state-handling
// code with Simulation: full histories instead of ring buffers, matrix
// products over virtual relay agents instead of an envelope queue.

#include <algorithm>
#include <utility>

#include "dpdda/engine.h"
#include "dpdda/errors.h"

namespace dpdda::engine {
namespace {

// Top block row for time t: column block r carries what was sent at t - r
// and arrives now, weighted with the sender-time matrix.
std::vector<Matrix> ArrivalBlocks(const RunConfig& config,
                                  const std::vector<Matrix>& weights, int t) {
  const int v = config.schedule.num_agents();
  const int tau = config.delays.tau_max();
  std::vector<Matrix> blocks(tau + 1, Matrix(v, v));
  for (int r = 0; r <= tau && r <= t; ++r) {
    const Matrix& w = weights[t - r];
    for (int i = 0; i < v; ++i) {
      for (int j = 0; j < v; ++j) {
        if (w(i, j) == 0.0) continue;
        if (i == j) {
          if (r == 0) blocks[0](i, i) = w(i, i);
        } else if (config.delays.Comm(i, j, t - r) == r) {
          blocks[r](i, j) = w(i, j);
        }
      }
    }
  }
  return blocks;
}

Matrix Times(const Matrix& a, const Matrix& b) { return a * b; }

}  // namespace

Trajectory RunAugmentedReference(const RunConfig& config) {
  config.Validate();
  const auto& game = *config.game;
  const int v = game.num_agents();
  const int m = game.dim();
  const int tau = config.delays.tau_max();
  const int rows = v * (tau + 1);
  const int horizon = config.horizon;

  double delta = 0.0, sigma = 0.0;
  if (config.noise.enabled()) {
    delta = config.noise.sensitivity_mode == privacy::SensitivityMode::kManual
                ? config.noise.manual_sensitivity
                : privacy::SensitivityBound(
                      game.constants().gradient_bound,
                      1.0 / graph::SelfWeightFloor(config.schedule, horizon),
                      m);
    sigma = config.noise.mode == privacy::NoiseMode::kFixedSigma
                ? config.noise.sigma
                : privacy::SigmaFor(delta, config.noise.epsilon);
  }

  Trajectory out;
  out.num_agents = v;
  out.horizon = horizon;

  std::vector<std::vector<Vec>> x_hist(horizon + 1, std::vector<Vec>(v));
  std::vector<std::vector<Vec>> v_hist(horizon + 1, std::vector<Vec>(v));
  std::vector<Vec> x_hat(v);
  Matrix zb(rows, m), zv(rows, m);
  for (int i = 0; i < v; ++i) {
    x_hist[0][i] = config.initial_actions[i];
    x_hat[i] = x_hist[0][i];
    v_hist[0][i] = game.Psi(i, x_hist[0][i]);
    for (int k = 0; k < m; ++k) zv(i, k) = v_hist[0][i][k];
  }
  Matrix y = Matrix::Identity(v);
  std::vector<Matrix> weights;
  double min_self = 1.0;

  std::vector<double> local_sum(v, 0.0), true_sum(v, 0.0);
  auto emit = [&](int t) {
    Vec profile;
    for (int i = 0; i < v; ++i) {
      profile.insert(profile.end(), x_hist[t][i].begin(), x_hist[t][i].end());
    }
    const Vec agg = game.Aggregate(profile);
    for (int i = 0; i < v; ++i) {
      AgentRecord r;
      r.t = t;
      r.agent = i;
      r.x = x_hist[t][i];
      r.x_hat = x_hat[i];
      r.v = v_hist[t][i];
      r.b.assign(zb.row(i).begin(), zb.row(i).end());
      r.b_norm = Norm2(r.b);
      r.loss_local = game.Cost(i, t, r.x, r.v);
      r.loss_true = game.Cost(i, t, r.x, agg);
      if (t == 0) {
        r.avg_loss_local = r.loss_local;
        r.avg_loss_true = r.loss_true;
      } else {
        local_sum[i] += r.loss_local;
        true_sum[i] += r.loss_true;
        r.avg_loss_local = local_sum[i] / t;
        r.avg_loss_true = true_sum[i] / t;
      }
      out.records.push_back(std::move(r));
    }
  };
  emit(0);

  for (int t = 0; t < horizon; ++t) {
    weights.push_back(config.schedule.WeightsAt(t));
    const Matrix& w = weights.back();
    if (config.noise.enabled()) out.ledger.Accumulate(t, delta, sigma);

    // Broadcast state: real rows noised, relay rows already hold noised
    // payloads.
    Matrix sb = zb, sv = zv;
    Matrix nb(v, m), nv(v, m);
    for (int i = 0; i < v; ++i) {
      const Vec n = privacy::AgentNoise(config.noise, sigma, config.seed,
                                        StreamPurpose::kNoise, i, t, m);
      const Vec n2 =
          config.noise.shared_draw
              ? n
              : privacy::AgentNoise(config.noise, sigma, config.seed,
                                    StreamPurpose::kNoiseAggregate, i, t, m);
      for (int k = 0; k < m; ++k) {
        nb(i, k) = n[k];
        nv(i, k) = n2[k];
        sb(i, k) += n[k];
        sv(i, k) += n2[k];
      }
    }

    const auto blocks = ArrivalBlocks(config, weights, t);
    const Matrix aug = graph::AssembleAugmented(blocks);
    Matrix zb_next = Times(aug, sb);
    Matrix zv_next = Times(aug, sv);

    const double eta = config.gamma / std::sqrt(static_cast<double>(t) + 2.0);
    for (int i = 0; i < v; ++i) {
      const double y_ii = y(i, i);
      if (!(y_ii >= 1e-15)) {
        throw DegeneracyError("self weight y_ii collapsed", t, i);
      }
      min_self = std::min(min_self, y_ii);
      int s = t - config.delays.Feedback(i, t);
      Vec g(m, 0.0);
      if (s >= 0 || config.warm_start == WarmStart::kClamp) {
        s = std::max(s, 0);
        g = game.LocalGradient(i, s, x_hist[s][i], v_hist[s][i]);
      }
      // The agent reads its own raw state, not the noised broadcast.
      for (int k = 0; k < m; ++k) {
        zb_next(i, k) += g[k] / y_ii - w(i, i) * nb(i, k);
        zv_next(i, k) -= w(i, i) * nv(i, k);
      }
      Vec b_next(zb_next.row(i).begin(), zb_next.row(i).end());
      x_hist[t + 1][i] = Project(b_next, eta, game.box(i));
      Vec x_hat_next(m);
      for (int k = 0; k < m; ++k) {
        x_hat_next[k] = (static_cast<double>(t) * x_hat[i][k] +
                         x_hist[t + 1][i][k]) /
                        static_cast<double>(t + 1);
      }
      const Vec psi_new = game.Psi(i, x_hat_next);
      const Vec psi_old = game.Psi(i, x_hat[i]);
      for (int k = 0; k < m; ++k) zv_next(i, k) += psi_new[k] - psi_old[k];
      v_hist[t + 1][i].assign(zv_next.row(i).begin(), zv_next.row(i).end());
      x_hat[i] = std::move(x_hat_next);
    }
    y = w * y;
    for (int i = 0; i < v; ++i) min_self = std::min(min_self, y(i, i));
    zb = std::move(zb_next);
    zv = std::move(zv_next);
    emit(t + 1);
  }

  out.summary.horizon = horizon;
  out.summary.final_x_hat = x_hat;
  out.summary.epsilon_hat = out.ledger.epsilon_hat();
  out.summary.min_self_weight = min_self;
  out.summary.sensitivity = delta;
  out.summary.sigma = sigma;
  return out;
}

}  // namespace dpdda::engine
