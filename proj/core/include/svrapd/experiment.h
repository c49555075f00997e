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

#ifndef SVRAPD_EXPERIMENT_H_
#define SVRAPD_EXPERIMENT_H_

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "svrapd/baselines.h"
#include "svrapd/config.h"
#include "svrapd/dro.h"
#include "svrapd/metrics.h"
#include "svrapd/run_log.h"
#include "svrapd/schedule.h"

namespace svrapd {

struct Instance {
  std::unique_ptr<DroProblem> problem;
  std::string dataset_id;
  std::size_t source_samples = 0;
};

// Synthetic instance or LIBSVM file (subsampled and optionally scaled).
Instance build_instance(const RunConfig& cfg);

// Analytic component profile with any explicit overrides applied.
LipschitzProfile resolve_profile(const RunConfig& cfg, const SaddlePointProblem& problem);

// Default momentum scale 1 / max(L_x, L_y), kept inside (0, 1).
double default_gamma_bar(double L_x, double L_y);

ScheduleKind schedule_kind_for(const std::string& method);
ParameterSchedule build_schedule(const RunConfig& cfg, const SaddlePointProblem& problem,
                                 ScheduleKind kind);

ApdFullOptions reference_options(const RunConfig& cfg);
std::string reference_path_for(const RunConfig& cfg);

// Loads the reference from disk when its fingerprint matches, otherwise
// computes (and saves) it if allowed. Throws if neither is possible.
ReferenceSaddle obtain_reference(const RunConfig& cfg, const SaddlePointProblem& problem,
                                 const GeometryPair& geoms, bool compute_if_missing);

struct MethodRun {
  std::string method;
  std::string schedule;
  std::vector<LogRow> rows;
  Metadata tuned;
  bool truncated = false;
  std::string truncation_reason;
  std::int64_t oracle_units = 0;
  std::int64_t clamped_gaps = 0;
};

// Runs one method end to end and collects its log rows. Errors inside the
// solver end the run early with truncated = true and the message as reason.
MethodRun run_method(const RunConfig& cfg, const SaddlePointProblem& problem,
                     const GeometryPair& geoms, const ReferenceSaddle& ref,
                     const std::string& method);

Metadata run_metadata(const RunConfig& cfg, const Instance& instance, const MethodRun& run,
                      const ReferenceSaddle& ref);
void write_run(std::ostream& out, const Metadata& metadata, const MethodRun& run);

// Least-squares slope of log(y) against log(x); empty with fewer than two
// usable (positive) points.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ReplaySummary {
  std::size_t rows = 0;
  double final_gap_last = 0.0;
  double final_gap_ergodic = 0.0;
  std::int64_t total_units = 0;
  std::optional<double> slope;
  bool truncated = false;
  std::string truncation_reason;
};

// Slope of gap_ergodic against epoch over epochs in [k_min, k_max].
ReplaySummary summarize_run(const RunLogFile& log, std::int64_t k_min = 4,
                            std::int64_t k_max = 64);

// Prints the profile, per-epoch parameters and inequality slacks for epochs
// 1..epochs. Returns true iff every check passes.
bool report_schedule(std::ostream& out, const ParameterSchedule& schedule,
                     const LipschitzProfile& profile, std::int64_t epochs);

}  // namespace svrapd

#endif  // SVRAPD_EXPERIMENT_H_
