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

#ifndef DPDDA_TOOLS_CONFIG_H_
#define DPDDA_TOOLS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpdda/delays.h"
#include "dpdda/engine.h"
#include "dpdda/graph.h"
#include "dpdda/nash_cournot.h"
#include "dpdda/privacy.h"
#include "json.hpp"

namespace dpdda::cli {

using Json = nlohmann::json;

struct GraphSpec {
  int agents = 0;
  // Add (i, i) for every agent to the static / base / every periodic phase.
  bool add_self_loops = true;
  bool require_self_loops = true;
  graph::ScheduleRule rule;
  bool operator==(const GraphSpec&) const = default;
};

struct DelaySpec {
  int tau_max = 0;
  graph::CommDelaySpec comm;
  graph::FeedbackDelaySpec feedback;
  engine::WarmStart warm_start = engine::WarmStart::kClamp;
  bool operator==(const DelaySpec&) const = default;
};

enum class OutputFormat { kTabular, kObjectLines };

struct OutputSpec {
  OutputFormat format = OutputFormat::kTabular;
  std::string path;
  // Adds a per-(t, agent) cumulative regret column; requires an oracle solve
  // per round.
  bool regret = false;
  bool operator==(const OutputSpec&) const = default;
};

// Declarative scenario, the in-memory image of a configuration file. All
// agent indices are 0-based here and 1-based in files.
struct ScenarioConfig {
  game::NashCournotParams game;
  GraphSpec graph;
  DelaySpec delays;
  privacy::NoiseConfig privacy;
  int horizon = 0;
  double gamma = 1.0;
  std::vector<Vec> init;
  std::uint64_t seed = 0;
  OutputSpec output;
  std::optional<int> connectivity_window;
  std::string run_id;
  bool operator==(const ScenarioConfig&) const = default;
};

// Parses a configuration document, expanding an optional "preset" key (the
// document's other keys are merge-patched over the preset). Throws
// ConfigError listing every problem found.
ScenarioConfig ParseScenario(const Json& doc);

// Reads and parses a file. An empty file is an empty document.
Json ReadConfigDocument(const std::string& path);
ScenarioConfig LoadScenario(const std::string& path);

// Fully expanded document; ParseScenario(ToJson(c)) == c.
Json ToJson(const ScenarioConfig& config);
void WriteConfig(const ScenarioConfig& config, const std::string& path);

graph::GraphSchedule BuildSchedule(const GraphSpec& spec);
graph::DelaySchedule BuildDelays(const ScenarioConfig& config);

// Builds and validates the engine configuration.
engine::RunConfig ToRunConfig(const ScenarioConfig& config);
engine::RunConfig LoadConfig(const std::string& path);

std::string FormatName(OutputFormat format);
OutputFormat ParseFormat(const std::string& name);

}  // namespace dpdda::cli

#endif  // DPDDA_TOOLS_CONFIG_H_
