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

#ifndef DPDDA_DELAYS_H_
#define DPDDA_DELAYS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "dpdda/graph_types.h"

namespace dpdda::graph {

struct EdgeDelay {
  Edge edge;
  int delay = 0;
  bool operator==(const EdgeDelay&) const = default;
};

struct AgentDelay {
  int agent = 0;
  int delay = 0;
  bool operator==(const AgentDelay&) const = default;
};

// Integer delays drawn uniformly from [lo, hi] independently per key and t.
struct UniformDelay {
  int lo = 0;
  int hi = 0;
  bool operator==(const UniformDelay&) const = default;
};

// Communication delays tau_ij(t). Precedence for an off-diagonal pair:
// a fixed entry, then the uniform draw (if the pair is covered), then base.
// Self pairs are always 0.
struct CommDelaySpec {
  int base = 0;
  std::vector<EdgeDelay> fixed;
  std::optional<UniformDelay> uniform;
  // Pairs covered by the uniform draw; empty means every off-diagonal pair.
  std::vector<Edge> uniform_edges;
  bool operator==(const CommDelaySpec&) const = default;
};

// Feedback delays tau_i(t), same precedence rules as CommDelaySpec.
struct FeedbackDelaySpec {
  int base = 0;
  std::vector<AgentDelay> fixed;
  std::optional<UniformDelay> uniform;
  // Agents covered by the uniform draw; empty means all agents.
  std::vector<int> uniform_agents;
  bool operator==(const FeedbackDelaySpec&) const = default;
};

// V x V matrix of communication delays at one t, row = receiver.
class DelaySlice {
 public:
  explicit DelaySlice(int num_agents) : n_(num_agents), data_(n_ * n_, 0) {}
  int num_agents() const { return n_; }
  int& operator()(int to, int from) { return data_[to * n_ + from]; }
  int operator()(int to, int from) const { return data_[to * n_ + from]; }

 private:
  int n_;
  std::vector<int> data_;
};

// Bounded communication and feedback delays. Randomised entries are a pure
// function of (seed, key, t), so any (i, j, t) can be queried in any order.
class DelaySchedule {
 public:
  // No delays at all (tau_max = 0).
  DelaySchedule() = default;

  // Throws OutOfRangeError if any configured delay lies outside [0, tau_max]
  // or a fixed self delay is nonzero.
  DelaySchedule(int tau_max, CommDelaySpec comm, FeedbackDelaySpec feedback,
                std::uint64_t seed);

  int tau_max() const { return tau_max_; }
  const CommDelaySpec& comm() const { return comm_; }
  const FeedbackDelaySpec& feedback() const { return feedback_; }
  std::uint64_t seed() const { return seed_; }

  // tau_{to,from}(t): delay of the message sent by 'from' to 'to' at time t.
  int Comm(int to, int from, int t) const;
  // tau_i(t): age of the gradient feedback agent i uses at time t.
  int Feedback(int agent, int t) const;

  DelaySlice CommSlice(int num_agents, int t) const;

  bool operator==(const DelaySchedule&) const = default;

 private:
  bool CoversPair(int to, int from) const;
  bool CoversAgent(int agent) const;

  int tau_max_ = 0;
  CommDelaySpec comm_;
  FeedbackDelaySpec feedback_;
  std::uint64_t seed_ = 0;
};

}  // namespace dpdda::graph

#endif  // DPDDA_DELAYS_H_
