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

#ifndef SVRAPD_SOLVER_H_
#define SVRAPD_SOLVER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "svrapd/geometry.h"
#include "svrapd/problem.h"
#include "svrapd/rng.h"
#include "svrapd/schedule.h"

namespace svrapd {

// Component-gradient evaluations, counted per block: one grad_x or one
// grad_y of one component is one unit. A full gradient of one block is n.
class OracleCounter {
 public:
  explicit OracleCounter(std::int64_t weight = 1) : weight_(weight) {}
  void add(std::int64_t evaluations) { units_ += evaluations * weight_; }
  std::int64_t units() const { return units_; }
  std::int64_t weight() const { return weight_; }

 private:
  std::int64_t weight_;
  std::int64_t units_ = 0;
};

// Per-epoch data: snapshot, mirror-space memory and snapshot gradients.
struct EpochState {
  PrimalDualPoint snapshot;
  DualVector memory_x;
  DualVector memory_y;
  Vector full_grad_x;
  Vector full_grad_y;
  // Per-component gradients at the snapshot, row-major; empty unless cached.
  std::vector<double> cached_grad_x;
  std::vector<double> cached_grad_y;
};

// (x_t, y_t) and (x_{t-1}, y_{t-1}).
struct IterateWindow {
  PrimalDualPoint current;
  PrimalDualPoint previous;
};

// Snapshot and window at the start of the first epoch; memory holds the
// mirror images of the start point and the window's previous pair equals
// the current one.
EpochState initial_epoch_state(const GeometryPair& geoms, const PrimalDualPoint& start);
IterateWindow initial_window(const PrimalDualPoint& start);

// Recomputes full (and optionally cached per-component) snapshot gradients.
void refresh_snapshot_gradients(const SaddlePointProblem& problem, EpochState& state,
                                bool cache_components, OracleCounter& counter);

// xi = grad_y Phi_j(x_t, y_t) - grad_y Phi_j(snapshot) + G_y
Vector svrg_grad_y(const SaddlePointProblem& problem, std::size_t j, const IterateWindow& window,
                   const EpochState& state);
// q = grad_y Phi_j(x_t, y_t) - grad_y Phi_j(x_{t-1}, y_{t-1})
Vector extrapolation_y(const SaddlePointProblem& problem, std::size_t j,
                       const IterateWindow& window);
// zeta = grad_x Phi_i(x_t, y_next) - grad_x Phi_i(snapshot) + G_x
Vector svrg_grad_x(const SaddlePointProblem& problem, std::size_t i, ConstSpan x_t,
                   ConstSpan y_next, const EpochState& state);

struct EpochOutcome {
  std::int64_t steps = 0;
  bool truncated = false;
};

// Runs the inner loop of epoch k on an epoch state whose snapshot gradients
// are current. Stops early, before any step that would push the counter
// past unit_limit. On exit the state holds the new snapshot and memory
// (averaged over the steps actually taken) and the window has rolled over.
// Throws NonFiniteIterate if an iterate leaves the finite range.
EpochOutcome run_epoch(const SaddlePointProblem& problem, const GeometryPair& geoms,
                       const EpochParameters& params, std::int64_t k, EpochState& state,
                       IterateWindow& window, const RngStream& rng, OracleCounter& counter,
                       std::int64_t unit_limit);

struct SolverOptions {
  // Keep all n component gradients at the snapshot (O(n dim) memory) and
  // save one evaluation per block and inner step.
  bool cache_snapshot_gradients = false;
  // Total oracle units allowed; 0 means unlimited.
  std::int64_t budget = 0;
  // Units charged per component evaluation.
  std::int64_t unit_weight = 1;
  std::optional<PrimalDualPoint> start;
};

struct EpochRecord {
  std::int64_t epoch = 0;
  std::int64_t steps = 0;
  std::int64_t oracle_units = 0;
  double wall_ms = 0.0;
  const PrimalDualPoint* last = nullptr;
  const PrimalDualPoint* snapshot = nullptr;
  const PrimalDualPoint* ergodic = nullptr;
};

// Called after every epoch; time spent here is excluded from wall_ms.
using EpochObserver = std::function<void(const EpochRecord&)>;

struct SolveResult {
  PrimalDualPoint last;
  PrimalDualPoint snapshot;
  // Mean of epoch snapshots weighted by inner-step counts.
  PrimalDualPoint ergodic;
  std::int64_t oracle_units = 0;
  std::int64_t epochs = 0;
  bool budget_exhausted = false;
  double wall_ms = 0.0;
};

class SvrApdSolver {
 public:
  SvrApdSolver(const SaddlePointProblem& problem, GeometryPair geoms, ParameterSchedule schedule,
               SolverOptions options = {});

  SolveResult run(std::int64_t max_epochs, std::uint64_t seed,
                  const EpochObserver& observer = {}) const;

  // Units needed to start an epoch and complete one inner step.
  std::int64_t epoch_entry_cost() const;
  std::int64_t step_cost() const;

  const ParameterSchedule& schedule() const { return schedule_; }

 private:
  const SaddlePointProblem& problem_;
  GeometryPair geoms_;
  ParameterSchedule schedule_;
  SolverOptions options_;
};

}  // namespace svrapd

#endif  // SVRAPD_SOLVER_H_
