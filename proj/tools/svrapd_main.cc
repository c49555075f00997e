// Copyright 2026 The svrapd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.h"

namespace {

void add_config_flags(CLI::App& cmd, svrapd::cli::Overrides& o) {
  cmd.add_option("--config", o.config_path, "Run configuration file")->check(CLI::ExistingFile);
  cmd.add_option("--method", o.method, "svr-apd-const, svr-apd-poly, smd, smp or apd-full");
  cmd.add_option("--dataset", o.dataset, "LIBSVM file (or name under $SVRAPD_DATA_DIR), or 'synthetic'");
  cmd.add_option("--budget", o.budget, "Oracle-unit budget (0: bounded by --epochs)");
  cmd.add_option("--epochs", o.epochs, "Number of epochs K");
  cmd.add_option("--seed", o.seed, "Sampling seed");
  cmd.add_option("--out", o.out, "Output CSV path");
  cmd.add_option("--rho", o.rho, "Ambiguity radius");
  cmd.add_option("--box", o.box, "Half-width of the box on u");
  cmd.add_option("--lambda-max", o.lambda_max, "Upper bound on lambda");
  cmd.add_option("--subsample", o.subsample, "Rows kept from a dataset file (0: all)");
  cmd.add_option("--set", o.settings, "Extra config entries as key=value");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = svrapd::cli;
  CLI::App app{"svrapd: variance-reduced accelerated primal-dual solver and DRO benchmarks"};
  app.require_subcommand(1);

  cli::Overrides run_o, val_o, ref_o;
  bool compute_reference = false;
  bool all_methods = false;
  auto* run = app.add_subcommand("run", "Run one method (or all) and write CSV logs");
  add_config_flags(*run, run_o);
  run->add_flag("--compute-reference", compute_reference,
                "Compute the reference saddle if no stored one matches");
  run->add_flag("--all-methods", all_methods, "Run all five methods, one CSV each");

  auto* val = app.add_subcommand("validate-schedule", "Check the step-size conditions per epoch");
  add_config_flags(*val, val_o);

  auto* ref = app.add_subcommand("compute-reference", "Compute and store the reference saddle");
  add_config_flags(*ref, ref_o);

  std::string data_dir;
  bool check_only = false;
  auto* fetch = app.add_subcommand("fetch-data", "Download and check the benchmark datasets");
  fetch->add_option("--dir", data_dir, "Target directory (default $SVRAPD_DATA_DIR or ./data)");
  fetch->add_flag("--check", check_only, "Only report what is present");

  std::string replay_path;
  std::int64_t k_min = 4, k_max = 64;
  auto* replay = app.add_subcommand("replay", "Summarize a CSV run log");
  replay->add_option("csv", replay_path, "Run log")->required()->check(CLI::ExistingFile);
  replay->add_option("--k-min", k_min, "First epoch of the slope fit");
  replay->add_option("--k-max", k_max, "Last epoch of the slope fit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      return cli::cmd_run(cli::resolve_config(run_o), compute_reference, all_methods, std::cout,
                          std::cerr);
    }
    if (*val) return cli::cmd_validate_schedule(cli::resolve_config(val_o), std::cout);
    if (*ref) return cli::cmd_compute_reference(cli::resolve_config(ref_o), std::cout);
    if (*fetch) {
      if (data_dir.empty()) {
        const char* env = std::getenv("SVRAPD_DATA_DIR");
        data_dir = env ? env : "data";
      }
      return cli::cmd_fetch_data(data_dir, !check_only, std::cout, std::cerr);
    }
    if (*replay) return cli::cmd_replay(replay_path, k_min, k_max, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitError;
  }
  return cli::kExitError;
}
