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

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "dpdda/errors.h"
#include "dpdda/graph.h"
#include "dpdda/random.h"
#include "output.h"
#include "presets.h"

namespace dpdda::cli {
namespace {

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path + ": cannot open for writing");
  return out;
}

void Close(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError(path + ": write failed");
}

// Maps exceptions to exit codes with a one-line diagnostic.
template <typename Fn>
int Guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

double MaxTrajectoryDiff(const engine::Trajectory& a,
                         const engine::Trajectory& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.records.size(); ++k) {
    const auto& ra = a.records[k];
    const auto& rb = b.records[k];
    worst = std::max({worst, MaxAbsDiff(ra.b, rb.b), MaxAbsDiff(ra.x, rb.x),
                      MaxAbsDiff(ra.v, rb.v)});
  }
  return worst;
}

std::string Num(double d) {
  std::ostringstream s;
  s << std::setprecision(6) << d;
  return s.str();
}

}  // namespace

ScenarioConfig ResolveScenario(const CommonOptions& options) {
  Json doc = Json::object();
  if (!options.config_path.empty()) {
    doc = ReadConfigDocument(options.config_path);
    if (!doc.is_object()) {
      throw ConfigError(options.config_path + ": expected a JSON object");
    }
  }
  if (!options.preset.empty()) doc["preset"] = options.preset;
  if (options.config_path.empty() && options.preset.empty()) {
    throw ConfigError("one of --config or --preset is required");
  }
  ScenarioConfig c = ParseScenario(doc);
  if (options.seed) c.seed = *options.seed;
  if (options.horizon) {
    if (*options.horizon < 1) throw ConfigError("--horizon must be >= 1");
    c.horizon = *options.horizon;
  }
  if (options.format) c.output.format = ParseFormat(*options.format);
  if (!options.out.empty()) c.output.path = options.out;
  return c;
}

RunArtifacts ExecuteScenario(const ScenarioConfig& config) {
  const engine::RunConfig rc = ToRunConfig(config);
  RunArtifacts art;
  art.trajectory = engine::Run(rc);
  if (config.output.regret) {
    const auto path =
        metrics::SolveEquilibriumPath(*rc.game, config.horizon);
    art.regret = metrics::DynamicRegret(*rc.game, art.trajectory, path);
  }
  art.summary = SummaryJson(config, art.trajectory,
                            art.regret ? &*art.regret : nullptr);
  return art;
}

std::vector<CheckResult> VerifyScenario(const ScenarioConfig& config) {
  std::vector<CheckResult> out;
  const int horizon = config.horizon;
  const int v = config.graph.agents;

  std::optional<engine::RunConfig> rc;
  {
    CheckResult c{"config", true, "valid"};
    try {
      rc = ToRunConfig(config);
    } catch (const Error& e) {
      c.passed = false;
      c.detail = e.what();
    }
    out.push_back(c);
  }

  std::optional<graph::GraphSchedule> schedule;
  {
    CheckResult c{"self-loops", true, "every agent has a self-loop at every t"};
    try {
      schedule = BuildSchedule(config.graph);
      for (int t = 0; t < horizon && c.passed; ++t) {
        const auto edges = schedule->EdgesAt(t);
        for (int i = 0; i < v; ++i) {
          if (!std::binary_search(edges.begin(), edges.end(), graph::Edge{i, i},
                                  [](const graph::Edge& a, const graph::Edge& b) {
                                    return std::tie(a.to, a.from) <
                                           std::tie(b.to, b.from);
                                  })) {
            c.passed = false;
            c.detail = "agent " + std::to_string(i + 1) +
                       " has no self-loop at t=" + std::to_string(t);
            break;
          }
        }
      }
    } catch (const Error& e) {
      c.passed = false;
      c.detail = e.what();
    }
    out.push_back(c);
  }

  std::optional<graph::DelaySchedule> delays;
  {
    CheckResult c{"delay-bounds", true,
                  "all delays within [0, " +
                      std::to_string(config.delays.tau_max) + "]"};
    try {
      delays = BuildDelays(config);
      const int tau = delays->tau_max();
      for (int t = 0; t < horizon && c.passed; ++t) {
        for (int i = 0; i < v && c.passed; ++i) {
          const int f = delays->Feedback(i, t);
          if (f < 0 || f > tau) {
            c.passed = false;
            c.detail = "feedback delay " + std::to_string(f) + " of agent " +
                       std::to_string(i + 1) + " at t=" + std::to_string(t);
          }
          for (int j = 0; j < v && c.passed; ++j) {
            const int d = delays->Comm(i, j, t);
            if (d < 0 || d > tau) {
              c.passed = false;
              c.detail = "delay " + std::to_string(d) + " on " +
                         std::to_string(j + 1) + "->" + std::to_string(i + 1) +
                         " at t=" + std::to_string(t);
            }
          }
        }
      }
    } catch (const Error& e) {
      c.passed = false;
      c.detail = e.what();
    }
    out.push_back(c);
  }

  {
    CheckResult w{"row-stochastic-W", schedule.has_value(), ""};
    CheckResult wa{"row-stochastic-W-augmented",
                   schedule.has_value() && delays.has_value(), ""};
    double worst = 0.0, worst_aug = 0.0;
    try {
      for (int t = 0; schedule && t < horizon; ++t) {
        const Matrix m = schedule->WeightsAt(t);
        worst = std::max(worst, m.MaxRowStochasticError());
        if (delays) {
          const Matrix a = graph::Augment(m, delays->CommSlice(v, t),
                                          delays->tau_max());
          worst_aug = std::max(worst_aug, a.MaxRowStochasticError());
        }
      }
      w.passed = w.passed && worst <= 1e-12;
      wa.passed = wa.passed && worst_aug <= 1e-12;
      w.detail = "max row-sum error " + Num(worst);
      wa.detail = "max row-sum error " + Num(worst_aug);
    } catch (const Error& e) {
      w.passed = wa.passed = false;
      w.detail = wa.detail = e.what();
    }
    if (!schedule) w.detail = wa.detail = "schedule unavailable";
    out.push_back(w);
    out.push_back(wa);
  }

  {
    CheckResult c{"connectivity", false, "schedule unavailable"};
    if (schedule) {
      try {
        if (config.connectivity_window) {
          const int b = *config.connectivity_window;
          if (b > horizon) {
            c.detail = "B=" + std::to_string(b) + " exceeds the horizon";
          } else {
            const auto rep = graph::ValidateBConnectivity(*schedule, b, horizon);
            c.passed = rep.connected;
            c.detail = rep.connected
                           ? "B=" + std::to_string(b) + " holds over the horizon"
                           : "B=" + std::to_string(b) + " fails at window " +
                                 std::to_string(*rep.first_violating_window) +
                                 " [t=" + std::to_string(rep.window_begin) +
                                 ".." + std::to_string(rep.window_end) + "]";
          }
        } else {
          c.detail = "no B <= horizon makes every window strongly connected";
          for (int b = 1; b <= horizon; ++b) {
            if (graph::ValidateBConnectivity(*schedule, b, horizon).connected) {
              c.passed = true;
              c.detail = "smallest B is " + std::to_string(b);
              break;
            }
          }
        }
      } catch (const Error& e) {
        c.detail = e.what();
      }
    }
    out.push_back(c);
  }

  {
    CheckResult c{"augmented-equivalence", false, "configuration invalid"};
    if (rc) {
      try {
        engine::RunConfig small = *rc;
        small.horizon = std::min(horizon, 50);
        small.connectivity_window.reset();
        const double diff = MaxTrajectoryDiff(engine::Run(small),
                                              engine::RunAugmentedReference(small));
        c.passed = diff <= 1e-9;
        c.detail = "T=" + std::to_string(small.horizon) +
                   ", max |b,x,v| difference " + Num(diff);
      } catch (const Error& e) {
        c.detail = e.what();
      }
    }
    out.push_back(c);
  }
  return out;
}

std::uint64_t SweepSubSeed(std::uint64_t master, const std::string& axis,
                           const std::string& value) {
  return MixKey(MixKey(master, HashString(axis)), HashString(value));
}

ScenarioConfig ApplySweepValue(const ScenarioConfig& base,
                               const std::string& axis,
                               const std::string& value) {
  ScenarioConfig c = base;
  auto number = [&]() {
    std::size_t used = 0;
    double d = 0.0;
    try {
      d = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || !std::isfinite(d)) {
      throw ConfigError("sweep value '" + value + "' is not a number");
    }
    return d;
  };
  auto integer = [&]() {
    const double d = number();
    if (d != std::floor(d) || d < 0) {
      throw ConfigError("sweep value '" + value +
                        "' is not a nonnegative integer");
    }
    return static_cast<long long>(d);
  };
  if (axis == "gamma") {
    c.gamma = number();
  } else if (axis == "epsilon") {
    c.privacy.mode = privacy::NoiseMode::kFixedEpsilon;
    c.privacy.epsilon = number();
  } else if (axis == "tau_max") {
    const int tau = static_cast<int>(integer());
    c.delays.tau_max = tau;
    c.delays.comm.uniform = graph::UniformDelay{0, tau};
    c.delays.feedback.uniform = graph::UniformDelay{0, tau};
  } else if (axis == "seed") {
    integer();
  } else if (axis == "T") {
    c.horizon = static_cast<int>(integer());
  } else {
    std::string known;
    for (const auto& a : SweepAxes()) known += (known.empty() ? "" : ", ") + a;
    throw ConfigError("axis '" + axis + "' is not sweepable (choose from " +
                      known + ")");
  }
  c.seed = SweepSubSeed(base.seed, axis, value);
  c.run_id = (base.run_id.empty() ? "sweep" : base.run_id) + ":" + axis + "=" +
             value;
  // Re-validate through the parser so bad values are reported as config
  // errors.
  return ParseScenario(ToJson(c));
}

std::vector<SweepRow> RunSweep(const ScenarioConfig& base,
                               const std::string& axis,
                               const std::vector<std::string>& values,
                               int threads) {
  std::vector<ScenarioConfig> configs;
  for (const auto& value : values) {
    configs.push_back(ApplySweepValue(base, axis, value));
  }
  std::vector<SweepRow> rows(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < configs.size(); k = next++) {
      try {
        rows[k] = {axis, values[k], ExecuteScenario(configs[k]).summary};
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(values.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

int CmdRun(const CommonOptions& options, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const ScenarioConfig c = ResolveScenario(options);
    const RunArtifacts art = ExecuteScenario(c);
    const RecordMeta meta{c.run_id, c.seed};
    const auto* regret = art.regret ? &*art.regret : nullptr;
    if (c.output.path.empty()) {
      WriteRecords(out, c.output.format, art.trajectory, meta, regret);
      err << art.summary.dump(2) << '\n';
      return kExitOk;
    }
    auto records = OpenForWrite(c.output.path);
    WriteRecords(records, c.output.format, art.trajectory, meta, regret);
    Close(records, c.output.path);
    const std::string summary_path = c.output.path + ".summary.json";
    auto summary = OpenForWrite(summary_path);
    summary << art.summary.dump(2) << '\n';
    Close(summary, summary_path);
    return kExitOk;
  });
}

int CmdVerify(const CommonOptions& options, std::ostream& out,
              std::ostream& err) {
  return Guarded(err, [&] {
    const auto results = VerifyScenario(ResolveScenario(options));
    bool all = true;
    for (const auto& r : results) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail
          << '\n';
      all = all && r.passed;
    }
    return all ? kExitOk : kExitCheckFailed;
  });
}

int CmdSweep(const CommonOptions& options, const std::string& axis,
             const std::vector<std::string>& values, int threads,
             std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    if (values.empty()) throw ConfigError("--values must list at least one value");
    const ScenarioConfig base = ResolveScenario(options);
    const auto rows = RunSweep(base, axis, values, threads);

    std::ostringstream table;
    table << "axis,value,run_id,seed,horizon,epsilon_hat,empirical_theta,"
             "max_rel_std_local,max_abs_slope_local,mean_final_avg_loss_local\n";
    Json combined = Json::array();
    for (const auto& row : rows) {
      const Json& s = row.summary;
      double max_rel = 0.0, max_slope = 0.0, mean_loss = 0.0;
      bool have_stab = true;
      for (const auto& a : s["agents"]) {
        mean_loss += a["final_avg_loss_local"].get<double>();
        if (a["stabilization_local"].is_null()) {
          have_stab = false;
          continue;
        }
        max_rel = std::max(max_rel, a["stabilization_local"]["rel_std"].get<double>());
        max_slope = std::max(
            max_slope, std::abs(a["stabilization_local"]["slope"].get<double>()));
      }
      mean_loss /= static_cast<double>(s["agents"].size());
      table << row.axis << ',' << row.value << ',' << s["run_id"].get<std::string>()
            << ',' << s["seed"].get<std::uint64_t>() << ','
            << s["horizon"].get<int>() << ','
            << FormatDouble(s["epsilon_hat"].get<double>()) << ','
            << FormatDouble(s["empirical_theta"].get<double>()) << ','
            << (have_stab ? FormatDouble(max_rel) : "") << ','
            << (have_stab ? FormatDouble(max_slope) : "") << ','
            << FormatDouble(mean_loss) << '\n';
      combined.push_back({{"axis", row.axis}, {"value", row.value}, {"summary", s}});
    }
    out << table.str();
    if (!base.output.path.empty()) {
      auto f = OpenForWrite(base.output.path);
      f << table.str();
      Close(f, base.output.path);
      const std::string json_path = base.output.path + ".json";
      auto j = OpenForWrite(json_path);
      j << combined.dump(2) << '\n';
      Close(j, json_path);
    }
    return kExitOk;
  });
}

int CmdPresets(std::ostream& out) {
  out << "preset version " << kPresetVersion << '\n';
  for (const auto& p : ListPresets()) {
    out << std::left << std::setw(28) << p.name << p.description << '\n';
  }
  return kExitOk;
}

int CmdNeOracle(const CommonOptions& options, int t, double tol,
                std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    if (t < 0) throw ConfigError("--t must be >= 0");
    const auto rc = ToRunConfig(ResolveScenario(options));
    metrics::OracleOptions opts;
    opts.tol = tol;
    const auto sol = metrics::SolveEquilibrium(*rc.game, t, opts);
    Json j = {{"t", sol.t},
              {"x_star", sol.x_star},
              {"residual", sol.residual},
              {"iterations", sol.iterations},
              {"step", sol.step}};
    out << j.dump(2) << '\n';
    return kExitOk;
  });
}

}  // namespace dpdda::cli
