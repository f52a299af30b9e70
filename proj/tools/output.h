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

#ifndef DPDDA_TOOLS_OUTPUT_H_
#define DPDDA_TOOLS_OUTPUT_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "config.h"
#include "dpdda/engine.h"
#include "dpdda/metrics.h"

namespace dpdda::cli {

inline constexpr int kRecordSchemaVersion = 1;

// Column names for actions of dimension m. Depends only on m and the regret
// flag.
std::vector<std::string> RecordColumns(int m, bool regret);

struct RecordMeta {
  std::string run_id;
  std::uint64_t seed = 0;
};

// Writes one record per (t, agent), t ascending. Tabular output is
// comma-separated with a header row; object-lines output starts with a header
// object followed by one JSON object per record. 'regret' may be null.
void WriteRecords(std::ostream& out, OutputFormat format,
                  const engine::Trajectory& trajectory, const RecordMeta& meta,
                  const metrics::RegretReport* regret);

// Shortest text that parses back to the same double.
std::string FormatDouble(double value);

// Final x_hat, epsilon_hat, empirical 1/theta, per-agent stabilization of
// the average-loss series and, if given, regret totals.
Json SummaryJson(const ScenarioConfig& config,
                 const engine::Trajectory& trajectory,
                 const metrics::RegretReport* regret);

}  // namespace dpdda::cli

#endif  // DPDDA_TOOLS_OUTPUT_H_
