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

#include "output.h"

#include <charconv>
#include <cmath>
#include <optional>

#include "presets.h"

namespace dpdda::cli {
namespace {

void VectorColumns(std::vector<std::string>& cols, const std::string& name,
                   int m) {
  if (m == 1) {
    cols.push_back(name);
    return;
  }
  for (int k = 1; k <= m; ++k) {
    cols.push_back(name + "_" + std::to_string(k));
  }
}

void AppendVec(std::string& line, const Vec& v) {
  for (double d : v) {
    line += ',';
    line += FormatDouble(d);
  }
}

// Regret accumulated by agent i over rounds 0 .. t-1.
double RegretAt(const metrics::RegretReport& r, int t, int i) {
  return t == 0 ? 0.0 : r.per_agent[i][t - 1];
}

Json StabilizationJson(const std::vector<double>& series) {
  const metrics::StabilizationCriterion crit;
  if (series.size() < static_cast<std::size_t>(10.0 / crit.fraction)) {
    return nullptr;
  }
  const auto s = metrics::StabilizationStat(series, crit.fraction);
  return {{"tail_fraction", crit.fraction},
          {"rel_std", s.rel_std},
          {"slope", s.slope},
          {"tail_mean", s.tail_mean},
          {"tail_std", s.tail_std},
          {"degenerate", s.degenerate}};
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::vector<std::string> RecordColumns(int m, bool regret) {
  std::vector<std::string> cols = {"run_id", "seed", "t", "agent"};
  VectorColumns(cols, "x", m);
  VectorColumns(cols, "x_hat", m);
  VectorColumns(cols, "v", m);
  for (const char* c : {"b_norm", "loss_local", "loss_true", "avg_loss_local",
                        "avg_loss_true"}) {
    cols.push_back(c);
  }
  if (regret) cols.push_back("regret");
  return cols;
}

void WriteRecords(std::ostream& out, OutputFormat format,
                  const engine::Trajectory& trajectory, const RecordMeta& meta,
                  const metrics::RegretReport* regret) {
  const int m = trajectory.records.empty()
                    ? 1
                    : static_cast<int>(trajectory.records.front().x.size());
  const auto cols = RecordColumns(m, regret != nullptr);
  if (format == OutputFormat::kTabular) {
    std::string header;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (k) header += ',';
      header += cols[k];
    }
    out << header << '\n';
    std::string line;
    for (const auto& r : trajectory.records) {
      line = meta.run_id;
      line += ',' + std::to_string(meta.seed) + ',' + std::to_string(r.t) +
              ',' + std::to_string(r.agent + 1);
      AppendVec(line, r.x);
      AppendVec(line, r.x_hat);
      AppendVec(line, r.v);
      for (double d : {r.b_norm, r.loss_local, r.loss_true, r.avg_loss_local,
                       r.avg_loss_true}) {
        line += ',';
        line += FormatDouble(d);
      }
      if (regret) {
        line += ',';
        line += FormatDouble(RegretAt(*regret, r.t, r.agent));
      }
      out << line << '\n';
    }
    return;
  }
  Json header = {{"type", "header"},
                 {"schema", "dpdda-records"},
                 {"version", kRecordSchemaVersion},
                 {"columns", cols},
                 {"run_id", meta.run_id},
                 {"seed", meta.seed}};
  out << header.dump() << '\n';
  for (const auto& r : trajectory.records) {
    Json rec = {{"run_id", meta.run_id},
                {"seed", meta.seed},
                {"t", r.t},
                {"agent", r.agent + 1}};
    auto put = [&](const std::string& name, const Vec& v) {
      if (m == 1) {
        rec[name] = v[0];
      } else {
        for (int k = 0; k < m; ++k) rec[name + "_" + std::to_string(k + 1)] = v[k];
      }
    };
    put("x", r.x);
    put("x_hat", r.x_hat);
    put("v", r.v);
    rec["b_norm"] = r.b_norm;
    rec["loss_local"] = r.loss_local;
    rec["loss_true"] = r.loss_true;
    rec["avg_loss_local"] = r.avg_loss_local;
    rec["avg_loss_true"] = r.avg_loss_true;
    if (regret) rec["regret"] = RegretAt(*regret, r.t, r.agent);
    out << rec.dump() << '\n';
  }
}

Json SummaryJson(const ScenarioConfig& config,
                 const engine::Trajectory& trajectory,
                 const metrics::RegretReport* regret) {
  const auto& s = trajectory.summary;
  Json agents = Json::array();
  const auto local = metrics::AverageLoss(trajectory, metrics::LossKind::kLocal);
  const auto truth = metrics::AverageLoss(trajectory, metrics::LossKind::kTrue);
  for (int i = 0; i < trajectory.num_agents; ++i) {
    Json a = {{"agent", i + 1},
              {"final_x_hat", s.final_x_hat[i]},
              {"final_avg_loss_local", local[i].empty() ? 0.0 : local[i].back()},
              {"final_avg_loss_true", truth[i].empty() ? 0.0 : truth[i].back()},
              {"stabilization_local", StabilizationJson(local[i])},
              {"stabilization_true", StabilizationJson(truth[i])}};
    if (regret) a["regret"] = regret->per_agent[i].back();
    agents.push_back(a);
  }
  Json out = {{"run_id", config.run_id},
              {"seed", config.seed},
              {"preset_version", kPresetVersion},
              {"horizon", s.horizon},
              {"gamma", config.gamma},
              {"epsilon_hat", s.epsilon_hat},
              {"sensitivity", s.sensitivity},
              {"sigma", s.sigma},
              {"min_self_weight", s.min_self_weight},
              {"empirical_theta", 1.0 / s.min_self_weight},
              {"messages",
               {{"sent", s.messages_sent},
                {"delivered", s.messages_delivered},
                {"in_flight", s.messages_in_flight}}},
              {"agents", agents}};
  if (regret) {
    out["regret"] = {{"raw", regret->total()},
                     {"per_agent_mean", regret->mean_total()}};
  }
  return out;
}

}  // namespace dpdda::cli
