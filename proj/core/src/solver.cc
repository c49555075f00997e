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

#include "svrapd/solver.h"

#include <chrono>
#include <stdexcept>
#include <string>

#include "svrapd/linalg.h"

namespace svrapd {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

ConstSpan row(const std::vector<double>& table, std::size_t i, std::size_t width) {
  return ConstSpan(table.data() + i * width, width);
}

// out += scale * grad_y Phi_j(snapshot), from the cache when present.
void add_snapshot_grad_y(const SaddlePointProblem& problem, std::size_t j, const EpochState& state,
                         double scale, MutableSpan out) {
  if (!state.cached_grad_y.empty()) {
    linalg::axpy(scale, row(state.cached_grad_y, j, problem.dual_dim()), out);
  } else {
    problem.add_grad_y_component(j, state.snapshot.x, state.snapshot.y, scale, out);
  }
}

void add_snapshot_grad_x(const SaddlePointProblem& problem, std::size_t i, const EpochState& state,
                         double scale, MutableSpan out) {
  if (!state.cached_grad_x.empty()) {
    linalg::axpy(scale, row(state.cached_grad_x, i, problem.primal_dim()), out);
  } else {
    problem.add_grad_x_component(i, state.snapshot.x, state.snapshot.y, scale, out);
  }
}

void require_finite(const PrimalDualPoint& z, std::int64_t k, std::int64_t t) {
  if (!linalg::all_finite(z.x) || !linalg::all_finite(z.y)) {
    throw NonFiniteIterate("non-finite iterate at epoch " + std::to_string(k) + ", step " +
                               std::to_string(t),
                           z);
  }
}

}  // namespace

EpochState initial_epoch_state(const GeometryPair& geoms, const PrimalDualPoint& start) {
  EpochState s;
  s.snapshot = start;
  s.memory_x = grad_map(geoms.primal, start.x);
  s.memory_y = grad_map(geoms.dual, start.y);
  return s;
}

IterateWindow initial_window(const PrimalDualPoint& start) { return IterateWindow{start, start}; }

void refresh_snapshot_gradients(const SaddlePointProblem& problem, EpochState& state,
                                bool cache_components, OracleCounter& counter) {
  const std::size_t n = problem.num_components();
  const std::size_t p = problem.primal_dim();
  const std::size_t q = problem.dual_dim();
  const auto& z = state.snapshot;
  state.full_grad_x.assign(p, 0.0);
  state.full_grad_y.assign(q, 0.0);
  if (cache_components) {
    state.cached_grad_x.assign(n * p, 0.0);
    state.cached_grad_y.assign(n * q, 0.0);
    const double w = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      MutableSpan gx(state.cached_grad_x.data() + i * p, p);
      MutableSpan gy(state.cached_grad_y.data() + i * q, q);
      problem.add_grad_x_component(i, z.x, z.y, 1.0, gx);
      problem.add_grad_y_component(i, z.x, z.y, 1.0, gy);
      linalg::axpy(w, gx, state.full_grad_x);
      linalg::axpy(w, gy, state.full_grad_y);
    }
  } else {
    state.cached_grad_x.clear();
    state.cached_grad_y.clear();
    problem.add_grad_x_full(z.x, z.y, 1.0, state.full_grad_x);
    problem.add_grad_y_full(z.x, z.y, 1.0, state.full_grad_y);
  }
  counter.add(2 * static_cast<std::int64_t>(n));
}

Vector svrg_grad_y(const SaddlePointProblem& problem, std::size_t j, const IterateWindow& window,
                   const EpochState& state) {
  Vector xi = state.full_grad_y;
  problem.add_grad_y_component(j, window.current.x, window.current.y, 1.0, xi);
  add_snapshot_grad_y(problem, j, state, -1.0, xi);
  return xi;
}

Vector extrapolation_y(const SaddlePointProblem& problem, std::size_t j,
                       const IterateWindow& window) {
  Vector q(problem.dual_dim(), 0.0);
  problem.add_grad_y_component(j, window.current.x, window.current.y, 1.0, q);
  problem.add_grad_y_component(j, window.previous.x, window.previous.y, -1.0, q);
  return q;
}

Vector svrg_grad_x(const SaddlePointProblem& problem, std::size_t i, ConstSpan x_t,
                   ConstSpan y_next, const EpochState& state) {
  Vector zeta = state.full_grad_x;
  problem.add_grad_x_component(i, x_t, y_next, 1.0, zeta);
  add_snapshot_grad_x(problem, i, state, -1.0, zeta);
  return zeta;
}

EpochOutcome run_epoch(const SaddlePointProblem& problem, const GeometryPair& geoms,
                       const EpochParameters& params, std::int64_t k, EpochState& state,
                       IterateWindow& window, const RngStream& rng, OracleCounter& counter,
                       std::int64_t unit_limit) {
  const std::size_t n = problem.num_components();
  const std::size_t p = problem.primal_dim();
  const std::size_t q = problem.dual_dim();
  const bool cached = !state.cached_grad_x.empty();
  const std::int64_t evals_per_step = cached ? 3 : 5;
  const std::int64_t step_units = evals_per_step * counter.weight();

  Vector yhat(q), xhat(p), dual_linear(q), zeta(p), y_next(q), x_next(p);
  Vector sum_x(p, 0.0), sum_y(q, 0.0), sum_gx(p, 0.0), sum_gy(q, 0.0), mirror_x(p), mirror_y(q);

  EpochOutcome out;
  for (std::int64_t t = 0; t < params.inner_steps; ++t) {
    if (unit_limit > 0 && counter.units() + step_units > unit_limit) {
      out.truncated = true;
      break;
    }
    const auto& cur = window.current;
    const auto& prev = window.previous;

    // Dual block.
    const auto j = static_cast<std::size_t>(
        rng.index(n, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(t), SampleSide::kDual));
    momentum_combine_into(geoms.dual, cur.y, state.memory_y.coefficients, params.gamma_y, yhat);
    // linear = -(xi + q) = -(2 g_j(z_t) - g_j(snapshot) + G_y - g_j(z_{t-1}))
    for (std::size_t r = 0; r < q; ++r) dual_linear[r] = -state.full_grad_y[r];
    problem.add_grad_y_component(j, cur.x, cur.y, -2.0, dual_linear);
    add_snapshot_grad_y(problem, j, state, 1.0, dual_linear);
    problem.add_grad_y_component(j, prev.x, prev.y, 1.0, dual_linear);
    prox_step_into(geoms.dual, yhat, dual_linear, params.sigma, y_next);

    // Primal block, using the fresh dual iterate.
    const auto i = static_cast<std::size_t>(rng.index(
        n, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(t), SampleSide::kPrimal));
    momentum_combine_into(geoms.primal, cur.x, state.memory_x.coefficients, params.gamma_x, xhat);
    linalg::copy(state.full_grad_x, zeta);
    problem.add_grad_x_component(i, cur.x, y_next, 1.0, zeta);
    add_snapshot_grad_x(problem, i, state, -1.0, zeta);
    prox_step_into(geoms.primal, xhat, zeta, params.tau, x_next);
    counter.add(evals_per_step);

    window.previous.x.swap(window.current.x);
    window.previous.y.swap(window.current.y);
    window.current.x.swap(x_next);
    window.current.y.swap(y_next);
    require_finite(window.current, k, t);

    linalg::axpy(1.0, window.current.x, sum_x);
    linalg::axpy(1.0, window.current.y, sum_y);
    grad_map_into(geoms.primal, window.current.x, mirror_x);
    grad_map_into(geoms.dual, window.current.y, mirror_y);
    linalg::axpy(1.0, mirror_x, sum_gx);
    linalg::axpy(1.0, mirror_y, sum_gy);
    ++out.steps;
  }

  if (out.steps > 0) {
    const double w = 1.0 / static_cast<double>(out.steps);
    linalg::scale(w, sum_x);
    linalg::scale(w, sum_y);
    linalg::scale(w, sum_gx);
    linalg::scale(w, sum_gy);
    state.snapshot = PrimalDualPoint{std::move(sum_x), std::move(sum_y)};
    state.memory_x.coefficients = std::move(sum_gx);
    state.memory_y.coefficients = std::move(sum_gy);
  }
  return out;
}

SvrApdSolver::SvrApdSolver(const SaddlePointProblem& problem, GeometryPair geoms,
                           ParameterSchedule schedule, SolverOptions options)
    : problem_(problem),
      geoms_(std::move(geoms)),
      schedule_(std::move(schedule)),
      options_(std::move(options)) {
  linalg::require_same_size(geoms_.primal.dimension(), problem_.primal_dim(), "primal geometry");
  linalg::require_same_size(geoms_.dual.dimension(), problem_.dual_dim(), "dual geometry");
  if (options_.budget < 0) throw std::invalid_argument("SvrApdSolver: budget must be >= 0");
  if (options_.unit_weight < 1) throw std::invalid_argument("SvrApdSolver: unit weight must be >= 1");
  if (options_.start && !is_feasible(problem_, *options_.start)) {
    throw std::invalid_argument("SvrApdSolver: start point is infeasible");
  }
}

std::int64_t SvrApdSolver::epoch_entry_cost() const {
  return 2 * static_cast<std::int64_t>(problem_.num_components()) * options_.unit_weight +
         step_cost();
}

std::int64_t SvrApdSolver::step_cost() const {
  return (options_.cache_snapshot_gradients ? 3 : 5) * options_.unit_weight;
}

SolveResult SvrApdSolver::run(std::int64_t max_epochs, std::uint64_t seed,
                              const EpochObserver& observer) const {
  if (max_epochs < 1) throw std::invalid_argument("SvrApdSolver::run: need at least one epoch");
  const PrimalDualPoint start = options_.start ? *options_.start : problem_.initial_point();
  EpochState state = initial_epoch_state(geoms_, start);
  IterateWindow window = initial_window(start);
  const RngStream rng(seed);
  OracleCounter counter(options_.unit_weight);

  SolveResult result;
  Vector ergodic_x(problem_.primal_dim(), 0.0);
  Vector ergodic_y(problem_.dual_dim(), 0.0);
  double total_steps = 0.0;
  double wall_ms = 0.0;

  for (std::int64_t k = 1; k <= max_epochs; ++k) {
    if (options_.budget > 0 && counter.units() + epoch_entry_cost() > options_.budget) {
      result.budget_exhausted = true;
      break;
    }
    const auto t0 = Clock::now();
    const EpochParameters params = schedule_.at(k);
    refresh_snapshot_gradients(problem_, state, options_.cache_snapshot_gradients, counter);
    const EpochOutcome outcome =
        run_epoch(problem_, geoms_, params, k, state, window, rng, counter, options_.budget);

    // Ergodic average as a running weighted mean.
    const double w = static_cast<double>(outcome.steps);
    total_steps += w;
    const double f = w / total_steps;
    for (std::size_t r = 0; r < ergodic_x.size(); ++r) {
      ergodic_x[r] += f * (state.snapshot.x[r] - ergodic_x[r]);
    }
    for (std::size_t r = 0; r < ergodic_y.size(); ++r) {
      ergodic_y[r] += f * (state.snapshot.y[r] - ergodic_y[r]);
    }
    result.ergodic = PrimalDualPoint{ergodic_x, ergodic_y};
    wall_ms += elapsed_ms(t0);
    result.epochs = k;

    if (observer) {
      EpochRecord rec;
      rec.epoch = k;
      rec.steps = outcome.steps;
      rec.oracle_units = counter.units();
      rec.wall_ms = wall_ms;
      rec.last = &window.current;
      rec.snapshot = &state.snapshot;
      rec.ergodic = &result.ergodic;
      observer(rec);
    }
    if (outcome.truncated) {
      result.budget_exhausted = true;
      break;
    }
  }

  if (result.epochs == 0) result.ergodic = state.snapshot;
  result.last = window.current;
  result.snapshot = state.snapshot;
  result.oracle_units = counter.units();
  result.wall_ms = wall_ms;
  return result;
}

}  // namespace svrapd
