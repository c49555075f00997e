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

#include <benchmark/benchmark.h>

#include "svrapd/dro.h"
#include "svrapd/geometry.h"
#include "svrapd/rng.h"
#include "svrapd/schedule.h"
#include "svrapd/solver.h"

namespace svrapd {
namespace {

void BM_DroComponentGradients(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const DroProblem p = synthetic_dro(64, m, 1);
  const PrimalDualPoint z = p.initial_point();
  Vector gx(p.primal_dim()), gy(p.dual_dim());
  std::size_t i = 0;
  for (auto _ : state) {
    p.add_grad_x_component(i, z.x, z.y, 1.0, gx);
    p.add_grad_y_component(i, z.x, z.y, 1.0, gy);
    benchmark::DoNotOptimize(gx.data());
    benchmark::DoNotOptimize(gy.data());
    i = (i + 1) % p.num_components();
  }
}
BENCHMARK(BM_DroComponentGradients)->Arg(20)->Arg(112);

void BM_ProxSimplexEntropy(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  SplitMix64 rng(2);
  Vector yhat(d), ascent(d), out(d);
  double s = 0.0;
  for (double& v : yhat) s += (v = rng.uniform(0.1, 1.0));
  for (double& v : yhat) v /= s;
  for (double& v : ascent) v = rng.uniform(-1.0, 1.0);
  for (auto _ : state) {
    prox_simplex_entropy_into(yhat, ascent, 0.5, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_ProxSimplexEntropy)->Arg(200)->Arg(2000);

void BM_ProxBox(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Box box = Box::Uniform(d, -10.0, 10.0);
  Vector xhat(d, 0.5), linear(d, 3.0);
  for (auto _ : state) {
    Vector x = prox_box(xhat, linear, 0.7, box.lower, box.upper);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_ProxBox)->Arg(21)->Arg(113);

void BM_SvrApdEpoch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DroProblem p = synthetic_dro(n, 20, 1);
  const auto sched =
      ParameterSchedule::Constant(lipschitz_estimate(p), static_cast<std::int64_t>(n), 4.0, 0.5, 0.5)
          .with_step_scale(1.2e5, 3e5);
  SolverOptions o;
  o.cache_snapshot_gradients = state.range(1) != 0;
  const SvrApdSolver solver(p, default_geometries(p), sched, o);
  for (auto _ : state) {
    SolveResult r = solver.run(1, 1);
    benchmark::DoNotOptimize(r.ergodic.x.data());
  }
}
BENCHMARK(BM_SvrApdEpoch)->Args({200, 0})->Args({200, 1})->Args({2000, 1});

}  // namespace
}  // namespace svrapd

BENCHMARK_MAIN();
