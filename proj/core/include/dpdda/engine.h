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

#ifndef DPDDA_ENGINE_H_
#define DPDDA_ENGINE_H_

#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "dpdda/delays.h"
#include "dpdda/game.h"
#include "dpdda/graph.h"
#include "dpdda/linalg.h"
#include "dpdda/privacy.h"

namespace dpdda::engine {

// What to do when the delayed feedback index t - tau_i(t) is negative.
enum class WarmStart {
  kClamp,         // use the state at time 0
  kZeroGradient,  // contribute no gradient this step
};

struct RunConfig {
  std::shared_ptr<const game::AggregativeGame> game;
  graph::GraphSchedule schedule;
  graph::DelaySchedule delays;
  privacy::NoiseConfig noise;
  int horizon = 1;
  // eta_k = gamma / sqrt(k + 1).
  double gamma = 1.0;
  std::vector<Vec> initial_actions;
  std::uint64_t seed = 0;
  WarmStart warm_start = WarmStart::kClamp;
  // When set, B-strong connectivity over the horizon is checked up front.
  std::optional<int> connectivity_window;

  // Throws ConfigError listing every problem found.
  void Validate() const;
};

// eta_k = gamma / sqrt(k + 1). The action x(t+1) is produced with
// eta_{t+1} = gamma / sqrt(t + 2).
inline double StepSize(double gamma, int k);

// Euclidean dual-averaging projection argmin_{x in box} <b, x> + |x|^2/(2 eta),
// i.e. the clamp of -eta * b.
Vec Project(std::span<const double> b, double eta, const game::Box& box);

// Last capacity (t, x, v) samples of one agent.
class HistoryBuffer {
 public:
  struct Entry {
    int t = 0;
    Vec x;
    Vec v;
  };

  explicit HistoryBuffer(int capacity) : capacity_(capacity) {}

  void Push(int t, Vec x, Vec v);
  // Throws InvariantError if t is not retained.
  const Entry& At(int t) const;

  int size() const { return static_cast<int>(entries_.size()); }
  int capacity() const { return capacity_; }

 private:
  int capacity_;
  std::deque<Entry> entries_;
};

struct AgentState {
  Vec b;      // dual variable
  Vec y;      // row i of Y(t), the eigenvector estimate
  Vec x;      // action
  Vec x_hat;  // running average of actions
  Vec v;      // estimate of the aggregate
  HistoryBuffer history{1};
};

// A noised payload in flight from 'from' to 'to'. The receiver weights it
// with the public [W(send_time)]_{to,from}.
struct MessageEnvelope {
  std::uint64_t id = 0;
  int from = 0;
  int to = 0;
  int send_time = 0;
  int arrival_time = 0;
  Vec b_tilde;
  Vec v_tilde;
};

// One row of output: agent i at time t.
struct AgentRecord {
  int t = 0;
  int agent = 0;
  Vec x;
  Vec x_hat;
  Vec v;
  Vec b;
  double b_norm = 0.0;
  // F_{i,t}(x_i(t), v_i(t)): the loss with the agent's own aggregate estimate.
  double loss_local = 0.0;
  // F_{i,t}(x_i(t), Psi(x(t))): the loss at the true aggregate.
  double loss_true = 0.0;
  // (1/t) sum_{s=1}^t of the above; equals the t = 0 loss at t = 0.
  double avg_loss_local = 0.0;
  double avg_loss_true = 0.0;
};

struct RunSummary {
  int horizon = 0;
  std::vector<Vec> final_x_hat;
  double epsilon_hat = 0.0;
  // min_t min_i y_ii(t) observed; its reciprocal is the empirical theta.
  double min_self_weight = 1.0;
  double sensitivity = 0.0;  // Delta_t used (0 when noise is off)
  double sigma = 0.0;        // sigma_t used (0 when noise is off)
  std::uint64_t messages_sent = 0;
  std::uint64_t messages_delivered = 0;
  std::uint64_t messages_in_flight = 0;
};

struct Trajectory {
  int num_agents = 0;
  int horizon = 0;
  // Time-major: records[t * num_agents + i], t = 0 ... horizon.
  std::vector<AgentRecord> records;
  privacy::PrivacyLedger ledger;
  RunSummary summary;

  const AgentRecord& at(int t, int i) const {
    return records[static_cast<std::size_t>(t) * num_agents + i];
  }
  // Stacked actions x(t).
  Vec Actions(int t) const;
};

using RecordSink = std::function<void(const AgentRecord&)>;

// Step-by-step executor of the private, delay-tolerant dual averaging
// algorithm. Each Step() is two-phase: every agent broadcasts its noised
// (b, v) first, then every agent consumes the envelopes arriving now and
// updates.
class Simulation {
 public:
  // Validates the configuration and initialises t = 0:
  // b = 0, y = e_i, x = x_hat = x(0), v = psi(x(0)).
  explicit Simulation(RunConfig config);

  int time() const { return t_; }
  int num_agents() const { return num_agents_; }
  const RunConfig& config() const { return config_; }
  const AgentState& agent(int i) const { return agents_[i]; }
  const privacy::PrivacyLedger& ledger() const { return ledger_; }

  // Advances from t to t + 1.
  void Step();

  // Record of agent i at the current time.
  AgentRecord Record(int i) const;

  // Diagnostics of the most recent Step().
  const Vec& last_broadcast_b(int j) const { return broadcast_b_[j]; }
  const Vec& last_broadcast_v(int j) const { return broadcast_v_[j]; }
  // sum over delivered envelopes of [W(send)]_ij * payload.
  const Vec& last_inbound_b(int i) const { return inbound_b_[i]; }
  const Vec& last_inbound_v(int i) const { return inbound_v_[i]; }
  const std::vector<MessageEnvelope>& last_deliveries() const {
    return deliveries_;
  }

  double sensitivity() const { return sensitivity_; }
  double sigma() const { return sigma_; }
  double min_self_weight() const { return min_self_weight_; }
  std::uint64_t messages_sent() const { return sent_; }
  std::uint64_t messages_delivered() const { return delivered_; }
  std::uint64_t messages_in_flight() const;

  RunSummary Summary() const;

 private:
  const Matrix& WeightsSentAt(int s) const;

  RunConfig config_;
  const game::AggregativeGame* game_;
  int num_agents_;
  int dim_;
  int depth_;  // tau_max + 1
  int t_ = 0;

  std::vector<AgentState> agents_;
  // Envelopes bucketed by arrival_time mod depth_.
  std::vector<std::vector<MessageEnvelope>> in_flight_;
  // W(s) for the last depth_ values of s, indexed by s mod depth_.
  std::vector<Matrix> weight_history_;

  privacy::PrivacyLedger ledger_;
  double sensitivity_ = 0.0;
  double sigma_ = 0.0;
  double min_self_weight_ = 1.0;

  std::vector<Vec> broadcast_b_, broadcast_v_, inbound_b_, inbound_v_;
  std::vector<MessageEnvelope> deliveries_;
  std::uint64_t next_id_ = 0;
  std::uint64_t sent_ = 0;
  std::uint64_t delivered_ = 0;
};

// Runs t = 0 ... horizon - 1 and returns every record (t = 0 ... horizon).
Trajectory Run(const RunConfig& config);

// As Run, but streams records to sink instead of storing them; the returned
// trajectory carries only the ledger and summary.
Trajectory Run(const RunConfig& config, const RecordSink& sink);

// Oracle twin of Run: a delay-free simulation over V(1 + tau_max) agents in
// which virtual agents relay noised payloads through the augmented matrix
// layout. Uses the same noise substreams. Returns real-agent records.
Trajectory RunAugmentedReference(const RunConfig& config);

inline double StepSize(double gamma, int k) {
  return gamma / std::sqrt(static_cast<double>(k) + 1.0);
}

}  // namespace dpdda::engine

#endif  // DPDDA_ENGINE_H_
