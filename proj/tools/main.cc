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

#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "commands.h"

namespace {

void AddCommon(CLI::App* app, dpdda::cli::CommonOptions& o) {
  app->add_option("--config", o.config_path, "Configuration file (JSON)");
  app->add_option("--preset", o.preset, "Named scenario preset");
  app->add_option("--seed", o.seed, "Master seed override");
  app->add_option("--horizon", o.horizon, "Horizon T override");
  app->add_option("--format", o.format, "Record format")
      ->check(CLI::IsMember({"tabular", "object-lines"}));
  app->add_option("--out", o.out, "Output path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dpdda: private delay-tolerant distributed dual averaging"};
  app.require_subcommand(1);

  dpdda::cli::CommonOptions run_opts, verify_opts, sweep_opts, oracle_opts;

  auto* run = app.add_subcommand("run", "Run a scenario and write records");
  AddCommon(run, run_opts);

  auto* verify = app.add_subcommand("verify", "Check a scenario's assumptions");
  AddCommon(verify, verify_opts);

  auto* sweep = app.add_subcommand("sweep", "Run a scenario over one axis");
  AddCommon(sweep, sweep_opts);
  std::string axis;
  std::vector<std::string> values;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  sweep->add_option("--axis", axis, "gamma, epsilon, tau_max, seed or T")
      ->required();
  sweep->add_option("--values", values, "Values for the axis")
      ->required()
      ->delimiter(',');
  sweep->add_option("--threads", threads, "Concurrent runs")
      ->check(CLI::PositiveNumber);

  app.add_subcommand("presets", "List scenario presets");

  auto* oracle = app.add_subcommand("ne-oracle", "Solve the equilibrium at t");
  AddCommon(oracle, oracle_opts);
  int t = 0;
  double tol = 1e-10;
  oracle->add_option("--t", t, "Round")->check(CLI::NonNegativeNumber);
  oracle->add_option("--tol", tol, "Distance-to-solution tolerance")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dpdda::cli::kExitConfig;
  }

  using namespace dpdda::cli;
  if (*run) return CmdRun(run_opts, std::cout, std::cerr);
  if (*verify) return CmdVerify(verify_opts, std::cout, std::cerr);
  if (*sweep) {
    return CmdSweep(sweep_opts, axis, values, threads, std::cout, std::cerr);
  }
  if (*oracle) return CmdNeOracle(oracle_opts, t, tol, std::cout, std::cerr);
  return CmdPresets(std::cout);
}
