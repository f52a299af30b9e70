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

#include "presets.h"

#include "dpdda/errors.h"

namespace dpdda::cli {
namespace {

// Five firms on the directed schedule of the reference experiments: a fixed
// ring-like backbone plus a 2 -> 4 link that is up at even t only. The
// union over any two consecutive steps is strongly connected.
Json Baseline() {
  return Json::parse(R"({
    "game": {"type": "nash_cournot"},
    "graph": {
      "agents": 5,
      "static": [[1, 2], [2, 3], [4, 5], [5, 1], [3, 1], [5, 3]],
      "intermittent": [{"from": 2, "to": 4, "period": 2, "phases": [0]}]
    },
    "privacy": {
      "mode": "epsilon",
      "epsilon": 0.2,
      "sensitivity": {"mode": "manual", "delta": 1.0}
    },
    "horizon": 2000,
    "gamma": 1.0,
    "init": [-1, 2, 2, 5, 1],
    "seed": 42,
    "connectivity": {"validate": true, "B": 2}
  })");
}

Json WithPatch(const char* run_id, const char* patch) {
  Json doc = Baseline();
  doc.merge_patch(Json::parse(patch));
  doc["run_id"] = run_id;
  return doc;
}

struct Entry {
  const char* name;
  const char* description;
  const char* patch;
};

constexpr Entry kEntries[] = {
    {"fig2-baseline", "epsilon=0.2, Delta=1, gamma=1, no delays", "{}"},
    {"fig3-high-lr", "baseline with gamma=10", R"({"gamma": 10.0})"},
    {"fig4-tight-privacy", "baseline with epsilon=0.1",
     R"({"privacy": {"epsilon": 0.1}})"},
    {"fig5-fixed-delay",
     "2 -> 4 messages delayed by 2 steps, privacy off",
     R"({"privacy": null,
         "delays": {"tau_max": 2,
                    "comm": {"fixed": [{"from": 2, "to": 4, "delay": 2}]}}})"},
    {"fig6-random-delays",
     "communication and feedback delays uniform in [0, 10], privacy off",
     R"({"privacy": null,
         "delays": {"tau_max": 10,
                    "comm": {"uniform": {"lo": 0, "hi": 10}},
                    "feedback": {"uniform": {"lo": 0, "hi": 10}}}})"},
    {"fig7-random-delays-private",
     "random delays in [0, 10] with epsilon=0.2",
     R"({"delays": {"tau_max": 10,
                    "comm": {"uniform": {"lo": 0, "hi": 10}},
                    "feedback": {"uniform": {"lo": 0, "hi": 10}}}})"},
};

}  // namespace

std::vector<PresetInfo> ListPresets() {
  std::vector<PresetInfo> out;
  for (const auto& e : kEntries) out.push_back({e.name, e.description});
  return out;
}

Json PresetDocument(const std::string& name) {
  for (const auto& e : kEntries) {
    if (name == e.name) return WithPatch(e.name, e.patch);
  }
  std::string known;
  for (const auto& e : kEntries) known += std::string(known.empty() ? "" : ", ") + e.name;
  throw ConfigError("unknown preset '" + name + "' (known: " + known + ")");
}

}  // namespace dpdda::cli
