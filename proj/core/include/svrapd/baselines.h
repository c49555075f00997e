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

#ifndef SVRAPD_BASELINES_H_
#define SVRAPD_BASELINES_H_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "svrapd/geometry.h"
#include "svrapd/problem.h"
#include "svrapd/rng.h"
#include "svrapd/solver.h"

namespace svrapd {

enum class StochasticMethod { kSmd, kSmp };

std::string to_string(StochasticMethod method);

inline constexpr std::array<double, 3> kDefaultStepGrid = {0.01, 0.1, 1.0};

// One stochastic mirror-descent step: both blocks move simultaneously with
// single-sample gradients taken at `state`. Costs 2 oracle units.
PrimalDualPoint smd_step(const SaddlePointProblem& problem, const GeometryPair& geoms,
                         const PrimalDualPoint& state, double step, const RngStream& rng,
                         std::uint64_t t);

struct SmpStep {
  PrimalDualPoint intermediate;
  PrimalDualPoint next;
};

// One stochastic mirror-prox step: a half-step to an intermediate point, then
// a full step from `state` with a fresh sample evaluated at the intermediate
// point. Costs 4 oracle units.
SmpStep smp_step(const SaddlePointProblem& problem, const GeometryPair& geoms,
                 const PrimalDualPoint& state, double step, const RngStream& rng,
                 std::uint64_t t);

struct StochasticOptions {
  // step_t = step_constant / sqrt(t + 1)
  double step_constant = 0.1;
  // Total oracle units; the run stops before a step that would exceed it.
  std::int64_t budget = 0;
  // Observer cadence in iterations.
  std::int64_t log_interval = 1;
  std::uint64_t seed = 0;
  std::optional<PrimalDualPoint> start;
};

struct BaselineRecord {
  std::int64_t iteration = 0;
  std::int64_t oracle_units = 0;
  double wall_ms = 0.0;
  const PrimalDualPoint* last = nullptr;
  const PrimalDualPoint* average = nullptr;
};

using BaselineObserver = std::function<void(const BaselineRecord&)>;

struct BaselineResult {
  PrimalDualPoint last;
  // Step-weighted average of the iterates (intermediate points for SMP).
  PrimalDualPoint average;
  std::int64_t iterations = 0;
  std::int64_t oracle_units = 0;
  double wall_ms = 0.0;
};

std::int64_t units_per_step(StochasticMethod method);

// Runs until the budget is spent. The observer also fires after the final
// step if it was not on the cadence.
BaselineResult run_stochastic(StochasticMethod method, const SaddlePointProblem& problem,
                              const GeometryPair& geoms, const StochasticOptions& options,
                              const BaselineObserver& observer = {});

struct ApdFullOptions {
  double tol = 1e-9;
  std::int64_t max_iters = 2'000'000;
  double gamma_bar = 0.5;
  // Multipliers on the schedule's tau and sigma.
  double tau_scale = 1.0;
  double sigma_scale = 1.0;
  // Residual is evaluated every this many iterations.
  std::int64_t check_interval = 10;
  std::optional<LipschitzProfile> profile;
  std::optional<PrimalDualPoint> start;
};

struct ApdFullResult {
  PrimalDualPoint point;
  double residual = 0.0;
  std::int64_t iterations = 0;
  bool converged = false;
};

// Deterministic full-gradient primal-dual iteration: the variance-reduced
// method applied to the problem seen as a single component, with the
// constant schedule at n = 1. Stops once the natural residual of the last
// iterate is at most tol; otherwise returns the best point seen.
ApdFullResult apd_full_solve(const SaddlePointProblem& problem, const GeometryPair& geoms,
                             const ApdFullOptions& options = {});

// The schedule used by apd_full_solve.
ParameterSchedule apd_full_schedule(const SaddlePointProblem& problem,
                                    const ApdFullOptions& options);

// Budgeted full-gradient run with per-epoch observation. Oracle units are
// charged n per full-gradient block so totals compare with the stochastic
// methods.
SolveResult run_apd_full(const SaddlePointProblem& problem, const GeometryPair& geoms,
                         const ApdFullOptions& options, std::int64_t budget,
                         std::int64_t max_epochs, const EpochObserver& observer = {});

}  // namespace svrapd

#endif  // SVRAPD_BASELINES_H_
