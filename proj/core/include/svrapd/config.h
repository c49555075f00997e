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

#ifndef SVRAPD_CONFIG_H_
#define SVRAPD_CONFIG_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "svrapd/run_log.h"

namespace svrapd {

// Fully-resolved run configuration. Optional fields are "auto" and are
// derived from the problem at run time.
struct RunConfig {
  // Problem.
  std::string dataset = "synthetic";
  std::int64_t synthetic_n = 200;
  std::int64_t synthetic_m = 20;
  std::uint64_t synthetic_seed = 1;
  double rho = 50.0;
  double box = 10.0;
  double lambda_max = 100.0;
  std::int64_t subsample = 2000;  // 0 keeps every sample
  std::uint64_t subsample_seed = 1;
  bool scale_features = false;

  // Method.
  std::string method = "svr-apd-const";
  double T = 1.0;
  std::optional<double> gamma_bar_x;
  std::optional<double> gamma_bar_y;
  double tau_scale = 1.0;
  double sigma_scale = 1.0;
  std::optional<double> L_xx;
  std::optional<double> L_xy;
  std::optional<double> L_yx;
  std::optional<double> L_yy;
  double C_X = 1.0;
  double C_Y = 1.0;
  bool cache_snapshot = false;
  std::optional<double> step_constant;  // auto: tuned over step_grid
  std::vector<double> step_grid = {0.01, 0.1, 1.0};

  // Run.
  std::int64_t epochs = 64;
  std::int64_t budget = 0;  // 0: epochs bound the run
  std::uint64_t seed = 1;
  std::int64_t log_points = 100;
  std::string out = "run.csv";

  // Reference saddle point.
  double reference_tol = 1e-9;
  std::int64_t reference_max_iters = 2'000'000;
  double reference_gamma_bar = 0.5;
  double reference_tau_scale = 1.0;
  double reference_sigma_scale = 1.0;
  std::string reference_path;  // empty: <out>.ref
};

inline constexpr const char* kMethods[] = {"svr-apd-const", "svr-apd-poly", "smd", "smp",
                                           "apd-full"};

// "key = value" lines; '#' and ';' start comments; "[section]" headers are
// accepted for readability, but keys are global. Unknown keys, duplicate keys
// and malformed values are errors that name the key and line.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
// parse_config + validate_config.
RunConfig load_config(const std::string& path);

// Applies one key/value pair as if it appeared in a file.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

// Range checks, method name and dataset presence.
void validate_config(const RunConfig& cfg);

// Resolves a dataset path: as given if it exists, else under $SVRAPD_DATA_DIR.
std::string resolve_dataset_path(const std::string& dataset);

// Canonical "key = value" listing of every key, in a fixed order.
Metadata config_echo(const RunConfig& cfg);
std::string to_config_text(const RunConfig& cfg);

// Hash of the echo, excluding output locations.
std::uint64_t config_hash(const RunConfig& cfg);

}  // namespace svrapd

#endif  // SVRAPD_CONFIG_H_
