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

#include "svrapd/baselines.h"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "svrapd/linalg.h"

namespace svrapd {

namespace {

using Clock = std::chrono::steady_clock;

struct BlockGradients {
  Vector gx;
  Vector gy;
};

BlockGradients sample_gradients(const SaddlePointProblem& problem, std::size_t j, ConstSpan x,
                                ConstSpan y) {
  BlockGradients g{Vector(problem.primal_dim(), 0.0), Vector(problem.dual_dim(), 0.0)};
  problem.add_grad_x_component(j, x, y, 1.0, g.gx);
  problem.add_grad_y_component(j, x, y, 1.0, g.gy);
  return g;
}

// Descent in x, ascent in y, both centered at `center`.
PrimalDualPoint mirror_step(const GeometryPair& geoms, const PrimalDualPoint& center,
                            BlockGradients g, double step) {
  linalg::scale(-1.0, g.gy);
  return PrimalDualPoint{prox_step(geoms.primal, center.x, g.gx, step),
                         prox_step(geoms.dual, center.y, g.gy, step)};
}

void check_step(double step) {
  if (!(step >= 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("baseline step must be finite and nonnegative");
  }
}

}  // namespace

std::string to_string(StochasticMethod method) {
  return method == StochasticMethod::kSmd ? "smd" : "smp";
}

std::int64_t units_per_step(StochasticMethod method) {
  return method == StochasticMethod::kSmd ? 2 : 4;
}

PrimalDualPoint smd_step(const SaddlePointProblem& problem, const GeometryPair& geoms,
                         const PrimalDualPoint& state, double step, const RngStream& rng,
                         std::uint64_t t) {
  check_step(step);
  if (step == 0.0) return state;
  const auto j = static_cast<std::size_t>(rng.index(problem.num_components(), 0, t, SampleSide::kDual));
  return mirror_step(geoms, state, sample_gradients(problem, j, state.x, state.y), step);
}

SmpStep smp_step(const SaddlePointProblem& problem, const GeometryPair& geoms,
                 const PrimalDualPoint& state, double step, const RngStream& rng,
                 std::uint64_t t) {
  check_step(step);
  if (step == 0.0) return SmpStep{state, state};
  const std::size_t n = problem.num_components();
  const auto j1 = static_cast<std::size_t>(rng.index(n, 0, t, SampleSide::kDual));
  const auto j2 = static_cast<std::size_t>(rng.index(n, 0, t, SampleSide::kPrimal));
  SmpStep s;
  s.intermediate = mirror_step(geoms, state, sample_gradients(problem, j1, state.x, state.y), step);
  s.next = mirror_step(geoms, state,
                       sample_gradients(problem, j2, s.intermediate.x, s.intermediate.y), step);
  return s;
}

BaselineResult run_stochastic(StochasticMethod method, const SaddlePointProblem& problem,
                              const GeometryPair& geoms, const StochasticOptions& options,
                              const BaselineObserver& observer) {
  if (!(options.step_constant > 0.0)) {
    throw std::invalid_argument("run_stochastic: step constant must be positive");
  }
  if (options.budget <= 0) throw std::invalid_argument("run_stochastic: budget must be positive");
  if (options.log_interval < 1) throw std::invalid_argument("run_stochastic: log interval must be >= 1");

  const RngStream rng(options.seed);
  const std::int64_t cost = units_per_step(method);
  PrimalDualPoint z = options.start ? *options.start : problem.initial_point();
  if (!is_feasible(problem, z)) throw std::invalid_argument("run_stochastic: infeasible start");

  BaselineResult r;
  r.average = z;
  double weight_sum = 0.0;
  double wall_ms = 0.0;
  std::int64_t last_logged = -1;

  auto notify = [&]() {
    if (!observer) return;
    BaselineRecord rec{r.iterations, r.oracle_units, wall_ms, &z, &r.average};
    observer(rec);
    last_logged = r.iterations;
  };

  while (r.oracle_units + cost <= options.budget) {
    const auto t0 = Clock::now();
    const auto t = static_cast<std::uint64_t>(r.iterations);
    const double step = options.step_constant / std::sqrt(static_cast<double>(t) + 1.0);
    const PrimalDualPoint* averaged = nullptr;
    SmpStep smp;
    if (method == StochasticMethod::kSmd) {
      z = smd_step(problem, geoms, z, step, rng, t);
      averaged = &z;
    } else {
      smp = smp_step(problem, geoms, z, step, rng, t);
      z = std::move(smp.next);
      averaged = &smp.intermediate;
    }
    if (!linalg::all_finite(z.x) || !linalg::all_finite(z.y)) {
      throw NonFiniteIterate(to_string(method) + ": non-finite iterate at step " + std::to_string(t), z);
    }
    weight_sum += step;
    const double f = step / weight_sum;
    for (std::size_t i = 0; i < z.x.size(); ++i) r.average.x[i] += f * (averaged->x[i] - r.average.x[i]);
    for (std::size_t i = 0; i < z.y.size(); ++i) r.average.y[i] += f * (averaged->y[i] - r.average.y[i]);
    r.oracle_units += cost;
    ++r.iterations;
    wall_ms += std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    if (r.iterations % options.log_interval == 0) notify();
  }
  if (r.iterations > 0 && last_logged != r.iterations) notify();
  r.last = std::move(z);
  r.wall_ms = wall_ms;
  return r;
}

ParameterSchedule apd_full_schedule(const SaddlePointProblem& problem,
                                    const ApdFullOptions& options) {
  const LipschitzProfile profile = options.profile ? *options.profile : problem.aggregate_lipschitz();
  return ParameterSchedule::Constant(profile, 1, 1.0, options.gamma_bar, options.gamma_bar)
      .with_step_scale(options.tau_scale, options.sigma_scale);
}

ApdFullResult apd_full_solve(const SaddlePointProblem& problem, const GeometryPair& geoms,
                             const ApdFullOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("apd_full_solve: tol must be positive");
  if (options.max_iters < 1) throw std::invalid_argument("apd_full_solve: max_iters must be >= 1");
  if (options.check_interval < 1) {
    throw std::invalid_argument("apd_full_solve: check interval must be >= 1");
  }
  const FullBatchView view(problem);
  const ParameterSchedule schedule = apd_full_schedule(problem, options);
  const PrimalDualPoint start = options.start ? *options.start : problem.initial_point();
  if (!is_feasible(problem, start)) throw std::invalid_argument("apd_full_solve: infeasible start");

  EpochState state = initial_epoch_state(geoms, start);
  IterateWindow window = initial_window(start);
  const RngStream rng(0);
  OracleCounter counter;

  ApdFullResult best;
  best.point = start;
  best.residual = std::numeric_limits<double>::infinity();
  std::int64_t iterations = 0;
  for (std::int64_t k = 1; iterations < options.max_iters; ++k) {
    const EpochParameters params = schedule.at(k);
    refresh_snapshot_gradients(view, state, true, counter);
    iterations += run_epoch(view, geoms, params, k, state, window, rng, counter, 0).steps;
    if (iterations == 1 || iterations % options.check_interval == 0 ||
        iterations >= options.max_iters) {
      const double res = fixed_point_residual(problem, window.current);
      if (res < best.residual) {
        best.residual = res;
        best.point = window.current;
      }
      if (res <= options.tol) {
        best.converged = true;
        break;
      }
    }
  }
  best.iterations = iterations;
  return best;
}

SolveResult run_apd_full(const SaddlePointProblem& problem, const GeometryPair& geoms,
                         const ApdFullOptions& options, std::int64_t budget,
                         std::int64_t max_epochs, const EpochObserver& observer) {
  const FullBatchView view(problem);
  SolverOptions so;
  so.cache_snapshot_gradients = true;
  so.budget = budget;
  so.unit_weight = static_cast<std::int64_t>(problem.num_components());
  so.start = options.start;
  const SvrApdSolver solver(view, geoms, apd_full_schedule(problem, options), so);
  return solver.run(max_epochs, 0, observer);
}

}  // namespace svrapd
