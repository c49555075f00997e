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

#ifndef SVRAPD_TOOLS_COMMANDS_H_
#define SVRAPD_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "svrapd/config.h"

namespace svrapd::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitNotConverged = 3;

// Command-line overrides layered on top of the config file.
struct Overrides {
  std::string config_path;
  std::optional<std::string> method;
  std::optional<std::string> dataset;
  std::optional<std::int64_t> budget;
  std::optional<std::int64_t> epochs;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<double> rho;
  std::optional<double> box;
  std::optional<double> lambda_max;
  std::optional<std::int64_t> subsample;
  std::vector<std::string> settings;  // "key=value"
};

// Config file (if any), then flags, then --set pairs; validated.
RunConfig resolve_config(const Overrides& o);

// "<stem>.<method><ext>" next to `out`.
std::string per_method_path(const std::string& out, const std::string& method);

int cmd_run(const RunConfig& cfg, bool compute_reference, bool all_methods, std::ostream& out,
            std::ostream& err);
int cmd_validate_schedule(const RunConfig& cfg, std::ostream& out);
int cmd_compute_reference(const RunConfig& cfg, std::ostream& out);
int cmd_replay(const std::string& path, std::int64_t k_min, std::int64_t k_max,
               std::ostream& out);

struct KnownDataset {
  const char* file;
  const char* url;
  std::size_t samples;
  std::size_t features;
};
const std::vector<KnownDataset>& known_datasets();

// Reports which known datasets are present under `dir` and their parsed
// shapes. With download set, missing files are fetched with curl first.
int cmd_fetch_data(const std::string& dir, bool download, std::ostream& out, std::ostream& err);

}  // namespace svrapd::cli

#endif  // SVRAPD_TOOLS_COMMANDS_H_
