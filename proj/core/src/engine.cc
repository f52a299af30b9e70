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

#include "dpdda/engine.h"

#include <algorithm>
#include <string>
#include <utility>

#include "dpdda/errors.h"

namespace dpdda::engine {

void RunConfig::Validate() const {
  std::vector<std::string> errors;
  if (!game) throw ConfigError("no game configured");
  const int v = game->num_agents();
  const int m = game->dim();
  if (schedule.num_agents() != v) {
    errors.push_back("graph has " + std::to_string(schedule.num_agents()) +
                     " agents but the game has " + std::to_string(v));
  }
  if (horizon < 0) errors.push_back("horizon must be >= 0");
  if (!(gamma > 0.0)) errors.push_back("gamma must be > 0");
  if (static_cast<int>(initial_actions.size()) != v) {
    errors.push_back("init must list " + std::to_string(v) + " actions");
  } else {
    for (int i = 0; i < v; ++i) {
      const Vec& x0 = initial_actions[i];
      if (static_cast<int>(x0.size()) != m) {
        errors.push_back("init of agent " + std::to_string(i + 1) +
                         " has wrong dimension");
      } else if (!game->box(i).Contains(x0)) {
        errors.push_back("init of agent " + std::to_string(i + 1) +
                         " lies outside its action box");
      }
    }
  }
  try {
    noise.Validate();
  } catch (const ConfigError& e) {
    errors.insert(errors.end(), e.items().begin(), e.items().end());
  }
  if (errors.empty() && schedule.num_agents() == v) {
    // Weight matrices must exist at every step that will run.
    for (int t = 0; t < horizon; ++t) {
      try {
        schedule.WeightsAt(t);
      } catch (const InvalidScheduleError& e) {
        errors.push_back(e.what());
        break;
      }
    }
    if (connectivity_window) {
      const int b = *connectivity_window;
      if (b < 1) {
        errors.push_back("connectivity window B must be >= 1");
      } else {
        const auto report =
            graph::ValidateBConnectivity(schedule, b, std::max(horizon, b));
        if (!report.connected) {
          errors.push_back("graph is not " + std::to_string(b) +
                           "-strongly connected: window [" +
                           std::to_string(report.window_begin) + ", " +
                           std::to_string(report.window_end) +
                           "] has a disconnected union");
        }
      }
    }
  }
  if (!errors.empty()) throw ConfigError(errors);
}

Vec Project(std::span<const double> b, double eta, const game::Box& box) {
  Vec out(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) {
    out[k] = std::clamp(-eta * b[k], box.lower[k], box.upper[k]);
  }
  return out;
}

void HistoryBuffer::Push(int t, Vec x, Vec v) {
  entries_.push_back({t, std::move(x), std::move(v)});
  while (static_cast<int>(entries_.size()) > capacity_) entries_.pop_front();
}

const HistoryBuffer::Entry& HistoryBuffer::At(int t) const {
  if (!entries_.empty()) {
    const int offset = t - entries_.front().t;
    if (offset >= 0 && offset < static_cast<int>(entries_.size())) {
      return entries_[offset];
    }
  }
  throw InvariantError("history miss for t=" + std::to_string(t));
}

Vec Trajectory::Actions(int t) const {
  Vec out;
  for (int i = 0; i < num_agents; ++i) {
    const Vec& x = at(t, i).x;
    out.insert(out.end(), x.begin(), x.end());
  }
  return out;
}

Simulation::Simulation(RunConfig config) : config_(std::move(config)) {
  config_.Validate();
  game_ = config_.game.get();
  num_agents_ = game_->num_agents();
  dim_ = game_->dim();
  depth_ = config_.delays.tau_max() + 1;

  const auto& noise = config_.noise;
  if (noise.enabled()) {
    if (noise.sensitivity_mode == privacy::SensitivityMode::kManual) {
      sensitivity_ = noise.manual_sensitivity;
    } else {
      const double floor =
          graph::SelfWeightFloor(config_.schedule, config_.horizon);
      sensitivity_ = privacy::SensitivityBound(
          game_->constants().gradient_bound, 1.0 / floor, dim_);
    }
    sigma_ = noise.mode == privacy::NoiseMode::kFixedSigma
                 ? noise.sigma
                 : privacy::SigmaFor(sensitivity_, noise.epsilon);
  }

  agents_.resize(num_agents_);
  for (int i = 0; i < num_agents_; ++i) {
    AgentState& a = agents_[i];
    a.x = config_.initial_actions[i];
    a.x_hat = a.x;
    a.b.assign(dim_, 0.0);
    a.y.assign(num_agents_, 0.0);
    a.y[i] = 1.0;
    a.v = game_->Psi(i, a.x);
    a.history = HistoryBuffer(depth_);
    a.history.Push(0, a.x, a.v);
  }
  in_flight_.resize(depth_);
  weight_history_.resize(depth_);
  broadcast_b_.assign(num_agents_, Vec(dim_, 0.0));
  broadcast_v_ = broadcast_b_;
  inbound_b_ = broadcast_b_;
  inbound_v_ = broadcast_b_;
}

const Matrix& Simulation::WeightsSentAt(int s) const {
  return weight_history_[s % depth_];
}

std::uint64_t Simulation::messages_in_flight() const {
  std::uint64_t n = 0;
  for (const auto& bucket : in_flight_) n += bucket.size();
  return n;
}

void Simulation::Step() {
  const int t = t_;
  const Matrix w = config_.schedule.WeightsAt(t);
  weight_history_[t % depth_] = w;

  if (config_.noise.enabled()) ledger_.Accumulate(t, sensitivity_, sigma_);

  // Phase 1: noise, broadcast, enqueue.
  for (int j = 0; j < num_agents_; ++j) {
    const Vec n = privacy::AgentNoise(config_.noise, sigma_, config_.seed,
                                      StreamPurpose::kNoise, j, t, dim_);
    const Vec n_v =
        config_.noise.shared_draw
            ? n
            : privacy::AgentNoise(config_.noise, sigma_, config_.seed,
                                  StreamPurpose::kNoiseAggregate, j, t, dim_);
    Vec& bt = broadcast_b_[j];
    Vec& vt = broadcast_v_[j];
    for (int k = 0; k < dim_; ++k) {
      bt[k] = agents_[j].b[k] + n[k];
      vt[k] = agents_[j].v[k] + n_v[k];
    }
  }
  for (const graph::Edge& e : config_.schedule.EdgesAt(t)) {
    if (e.from == e.to) continue;
    const int delay = config_.delays.Comm(e.to, e.from, t);
    if (delay < 0 || delay >= depth_) {
      throw InvariantError("delay outside [0, tau_max]");
    }
    MessageEnvelope env;
    env.id = next_id_++;
    env.from = e.from;
    env.to = e.to;
    env.send_time = t;
    env.arrival_time = t + delay;
    env.b_tilde = broadcast_b_[e.from];
    env.v_tilde = broadcast_v_[e.from];
    in_flight_[env.arrival_time % depth_].push_back(std::move(env));
    ++sent_;
  }

  // Phase 2: deliver everything that arrives at t.
  deliveries_.clear();
  std::swap(deliveries_, in_flight_[t % depth_]);
  for (int i = 0; i < num_agents_; ++i) {
    std::fill(inbound_b_[i].begin(), inbound_b_[i].end(), 0.0);
    std::fill(inbound_v_[i].begin(), inbound_v_[i].end(), 0.0);
  }
  for (const MessageEnvelope& env : deliveries_) {
    if (env.arrival_time != t) {
      throw InvariantError("envelope " + std::to_string(env.id) +
                           " surfaced at the wrong time");
    }
    const double weight = WeightsSentAt(env.send_time)(env.to, env.from);
    Axpy(weight, env.b_tilde, inbound_b_[env.to]);
    Axpy(weight, env.v_tilde, inbound_v_[env.to]);
  }
  delivered_ += deliveries_.size();

  // Phase 3: local updates, computed from the time-t states.
  const double eta = StepSize(config_.gamma, t + 1);
  const double keep = static_cast<double>(t) / static_cast<double>(t + 1);
  const double fresh = 1.0 / static_cast<double>(t + 1);
  std::vector<AgentState> next(num_agents_);
  for (int i = 0; i < num_agents_; ++i) {
    const AgentState& a = agents_[i];
    AgentState& n = next[i];
    const double w_ii = w(i, i);

    const double y_ii = a.y[i];
    if (!(y_ii >= 1e-15)) {
      throw DegeneracyError("self weight y_ii collapsed", t, i);
    }
    min_self_weight_ = std::min(min_self_weight_, y_ii);

    int s = t - config_.delays.Feedback(i, t);
    Vec g(dim_, 0.0);
    if (s >= 0 || config_.warm_start == WarmStart::kClamp) {
      s = std::max(s, 0);
      const auto& past = a.history.At(s);
      g = game_->LocalGradient(i, s, past.x, past.v);
    }

    n.b.resize(dim_);
    for (int k = 0; k < dim_; ++k) {
      n.b[k] = w_ii * a.b[k] + inbound_b_[i][k] + g[k] / y_ii;
    }

    n.y.assign(num_agents_, 0.0);
    for (int j = 0; j < num_agents_; ++j) {
      const double w_ij = w(i, j);
      if (w_ij == 0.0) continue;
      Axpy(w_ij, agents_[j].y, n.y);
    }

    n.x = Project(n.b, eta, game_->box(i));
    n.x_hat.resize(dim_);
    for (int k = 0; k < dim_; ++k) {
      n.x_hat[k] = keep * a.x_hat[k] + fresh * n.x[k];
    }

    const Vec psi_new = game_->Psi(i, n.x_hat);
    const Vec psi_old = game_->Psi(i, a.x_hat);
    n.v.resize(dim_);
    for (int k = 0; k < dim_; ++k) {
      n.v[k] = w_ii * a.v[k] + inbound_v_[i][k] + psi_new[k] - psi_old[k];
    }
  }
  for (int i = 0; i < num_agents_; ++i) {
    next[i].history = std::move(agents_[i].history);
    next[i].history.Push(t + 1, next[i].x, next[i].v);
  }
  agents_ = std::move(next);
  t_ = t + 1;

  for (int i = 0; i < num_agents_; ++i) {
    min_self_weight_ = std::min(min_self_weight_, agents_[i].y[i]);
  }
}

AgentRecord Simulation::Record(int i) const {
  const AgentState& a = agents_[i];
  AgentRecord r;
  r.t = t_;
  r.agent = i;
  r.x = a.x;
  r.x_hat = a.x_hat;
  r.v = a.v;
  r.b = a.b;
  r.b_norm = Norm2(a.b);
  r.loss_local = game_->Cost(i, t_, a.x, a.v);
  Vec profile;
  for (const AgentState& other : agents_) {
    profile.insert(profile.end(), other.x.begin(), other.x.end());
  }
  r.loss_true = game_->Cost(i, t_, a.x, game_->Aggregate(profile));
  return r;
}

RunSummary Simulation::Summary() const {
  RunSummary s;
  s.horizon = t_;
  for (const AgentState& a : agents_) s.final_x_hat.push_back(a.x_hat);
  s.epsilon_hat = ledger_.epsilon_hat();
  s.min_self_weight = min_self_weight_;
  s.sensitivity = sensitivity_;
  s.sigma = sigma_;
  s.messages_sent = sent_;
  s.messages_delivered = delivered_;
  s.messages_in_flight = messages_in_flight();
  return s;
}

namespace {

// Emits the records of the current time slice, filling in running averages.
void EmitSlice(const Simulation& sim, std::vector<double>& local_sum,
               std::vector<double>& true_sum, const RecordSink& sink) {
  const int t = sim.time();
  for (int i = 0; i < sim.num_agents(); ++i) {
    AgentRecord r = sim.Record(i);
    if (t == 0) {
      r.avg_loss_local = r.loss_local;
      r.avg_loss_true = r.loss_true;
    } else {
      local_sum[i] += r.loss_local;
      true_sum[i] += r.loss_true;
      r.avg_loss_local = local_sum[i] / t;
      r.avg_loss_true = true_sum[i] / t;
    }
    sink(r);
  }
}

}  // namespace

Trajectory Run(const RunConfig& config, const RecordSink& sink) {
  Simulation sim(config);
  std::vector<double> local_sum(sim.num_agents(), 0.0);
  std::vector<double> true_sum(sim.num_agents(), 0.0);
  EmitSlice(sim, local_sum, true_sum, sink);
  for (int t = 0; t < config.horizon; ++t) {
    sim.Step();
    EmitSlice(sim, local_sum, true_sum, sink);
  }
  Trajectory out;
  out.num_agents = sim.num_agents();
  out.horizon = config.horizon;
  out.ledger = sim.ledger();
  out.summary = sim.Summary();
  return out;
}

Trajectory Run(const RunConfig& config) {
  std::vector<AgentRecord> records;
  Trajectory out = Run(config, [&records](const AgentRecord& r) {
    records.push_back(r);
  });
  out.records = std::move(records);
  return out;
}

}  // namespace dpdda::engine
