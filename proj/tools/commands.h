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

#ifndef DPDDA_TOOLS_COMMANDS_H_
#define DPDDA_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "config.h"
#include "dpdda/engine.h"
#include "dpdda/errors.h"
#include "dpdda/metrics.h"

namespace dpdda::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitIo = 4;

class IoError : public Error {
 public:
  using Error::Error;
};

struct CommonOptions {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<int> horizon;
  std::optional<std::string> format;
  std::string out;
};

// Loads --config and/or --preset (a --preset flag replaces any preset named
// in the file) and applies the command-line overrides.
ScenarioConfig ResolveScenario(const CommonOptions& options);

struct RunArtifacts {
  engine::Trajectory trajectory;
  std::optional<metrics::RegretReport> regret;
  Json summary;
};

RunArtifacts ExecuteScenario(const ScenarioConfig& config);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Every check runs even if earlier ones fail.
std::vector<CheckResult> VerifyScenario(const ScenarioConfig& config);

inline const std::vector<std::string>& SweepAxes() {
  static const std::vector<std::string> axes = {"gamma", "epsilon", "tau_max",
                                                "seed", "T"};
  return axes;
}

// hash(master seed, axis, value text).
std::uint64_t SweepSubSeed(std::uint64_t master, const std::string& axis,
                           const std::string& value);

// The base configuration with one axis set to 'value' and the derived
// sub-seed. Throws ConfigError for an unknown axis or bad value.
ScenarioConfig ApplySweepValue(const ScenarioConfig& base,
                               const std::string& axis,
                               const std::string& value);

struct SweepRow {
  std::string axis;
  std::string value;
  Json summary;
};

// Runs every member, concurrently when threads > 1; rows come back in
// 'values' order.
std::vector<SweepRow> RunSweep(const ScenarioConfig& base,
                               const std::string& axis,
                               const std::vector<std::string>& values,
                               int threads);

int CmdRun(const CommonOptions& options, std::ostream& out, std::ostream& err);
int CmdVerify(const CommonOptions& options, std::ostream& out,
              std::ostream& err);
int CmdSweep(const CommonOptions& options, const std::string& axis,
             const std::vector<std::string>& values, int threads,
             std::ostream& out, std::ostream& err);
int CmdPresets(std::ostream& out);
int CmdNeOracle(const CommonOptions& options, int t, double tol,
                std::ostream& out, std::ostream& err);

}  // namespace dpdda::cli

#endif  // DPDDA_TOOLS_COMMANDS_H_
