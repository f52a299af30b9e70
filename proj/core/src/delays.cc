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

#include "dpdda/delays.h"

#include <algorithm>
#include <string>
#include <utility>

#include "dpdda/errors.h"
#include "dpdda/random.h"

namespace dpdda::graph {
namespace {

void CheckBound(int delay, int tau_max, const std::string& what) {
  if (delay < 0 || delay > tau_max) {
    throw OutOfRangeError(what + " = " + std::to_string(delay) +
                          " outside [0, " + std::to_string(tau_max) + "]");
  }
}

void CheckUniform(const std::optional<UniformDelay>& u, int tau_max,
                  const std::string& what) {
  if (!u) return;
  if (u->lo > u->hi) {
    throw OutOfRangeError(what + " uniform range has lo > hi");
  }
  CheckBound(u->lo, tau_max, what + " uniform lo");
  CheckBound(u->hi, tau_max, what + " uniform hi");
}

}  // namespace

DelaySchedule::DelaySchedule(int tau_max, CommDelaySpec comm,
                             FeedbackDelaySpec feedback, std::uint64_t seed)
    : tau_max_(tau_max),
      comm_(std::move(comm)),
      feedback_(std::move(feedback)),
      seed_(seed) {
  if (tau_max_ < 0) throw OutOfRangeError("tau_max must be nonnegative");
  CheckBound(comm_.base, tau_max_, "communication delay base");
  CheckBound(feedback_.base, tau_max_, "feedback delay base");
  for (const auto& f : comm_.fixed) {
    const std::string name = "communication delay tau_" +
                             std::to_string(f.edge.to + 1) +
                             std::to_string(f.edge.from + 1);
    CheckBound(f.delay, tau_max_, name);
    if (f.edge.to == f.edge.from && f.delay != 0) {
      throw OutOfRangeError(name + " must be 0 (self access is immediate)");
    }
  }
  for (const auto& f : feedback_.fixed) {
    CheckBound(f.delay, tau_max_,
               "feedback delay tau_" + std::to_string(f.agent + 1));
  }
  CheckUniform(comm_.uniform, tau_max_, "communication delay");
  CheckUniform(feedback_.uniform, tau_max_, "feedback delay");
}

bool DelaySchedule::CoversPair(int to, int from) const {
  if (comm_.uniform_edges.empty()) return true;
  return std::find(comm_.uniform_edges.begin(), comm_.uniform_edges.end(),
                   Edge{from, to}) != comm_.uniform_edges.end();
}

bool DelaySchedule::CoversAgent(int agent) const {
  if (feedback_.uniform_agents.empty()) return true;
  return std::find(feedback_.uniform_agents.begin(),
                   feedback_.uniform_agents.end(),
                   agent) != feedback_.uniform_agents.end();
}

int DelaySchedule::Comm(int to, int from, int t) const {
  if (to == from) return 0;
  for (const auto& f : comm_.fixed) {
    if (f.edge.to == to && f.edge.from == from) return f.delay;
  }
  if (comm_.uniform && CoversPair(to, from)) {
    const std::uint64_t pair =
        (static_cast<std::uint64_t>(to) << 32) | static_cast<std::uint32_t>(from);
    SplitMix64 gen(SubstreamSeed(seed_, StreamPurpose::kCommDelay, pair,
                                 static_cast<std::uint64_t>(t)));
    return UniformInt(gen, comm_.uniform->lo, comm_.uniform->hi);
  }
  return comm_.base;
}

int DelaySchedule::Feedback(int agent, int t) const {
  for (const auto& f : feedback_.fixed) {
    if (f.agent == agent) return f.delay;
  }
  if (feedback_.uniform && CoversAgent(agent)) {
    SplitMix64 gen(SubstreamSeed(seed_, StreamPurpose::kFeedbackDelay,
                                 static_cast<std::uint64_t>(agent),
                                 static_cast<std::uint64_t>(t)));
    return UniformInt(gen, feedback_.uniform->lo, feedback_.uniform->hi);
  }
  return feedback_.base;
}

DelaySlice DelaySchedule::CommSlice(int num_agents, int t) const {
  DelaySlice slice(num_agents);
  for (int i = 0; i < num_agents; ++i) {
    for (int j = 0; j < num_agents; ++j) slice(i, j) = Comm(i, j, t);
  }
  return slice;
}

}  // namespace dpdda::graph
