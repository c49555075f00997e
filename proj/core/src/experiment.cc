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

#include "svrapd/experiment.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "svrapd/libsvm.h"
#include "svrapd/solver.h"
#include "svrapd/text.h"

namespace svrapd {

namespace {

DroOptions dro_options(const RunConfig& cfg) {
  DroOptions o;
  o.rho = cfg.rho;
  o.lambda_max = cfg.lambda_max;
  o.box_halfwidth = cfg.box;
  return o;
}

bool is_svrapd(const std::string& method) {
  return method == "svr-apd-const" || method == "svr-apd-poly";
}

}  // namespace

Instance build_instance(const RunConfig& cfg) {
  Instance inst;
  if (cfg.dataset == "synthetic") {
    const auto n = static_cast<std::size_t>(cfg.synthetic_n);
    const auto m = static_cast<std::size_t>(cfg.synthetic_m);
    inst.problem = std::make_unique<DroProblem>(synthetic_dro(n, m, cfg.synthetic_seed, dro_options(cfg)));
    inst.source_samples = n;
    inst.dataset_id = "synthetic(n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                      ",seed=" + std::to_string(cfg.synthetic_seed) + ")";
    return inst;
  }
  const std::string path = resolve_dataset_path(cfg.dataset);
  SparseDataset data = load_libsvm(path);
  inst.source_samples = data.n_samples();
  std::string id = std::filesystem::path(path).filename().string();
  if (cfg.subsample > 0 && static_cast<std::size_t>(cfg.subsample) < data.n_samples()) {
    data = subsample(data, static_cast<std::size_t>(cfg.subsample), cfg.subsample_seed);
    id += "[subsample=" + std::to_string(cfg.subsample) + ",seed=" +
          std::to_string(cfg.subsample_seed) + "]";
  }
  if (cfg.scale_features) {
    data = scale_features(data);
    id += "[scaled]";
  }
  inst.problem = std::make_unique<DroProblem>(to_dense(data), data.n_features, data.labels,
                                              dro_options(cfg));
  inst.dataset_id = id;
  return inst;
}

LipschitzProfile resolve_profile(const RunConfig& cfg, const SaddlePointProblem& problem) {
  LipschitzProfile p = problem.lipschitz();
  if (cfg.L_xx) p.L_xx = *cfg.L_xx;
  if (cfg.L_xy) p.L_xy = *cfg.L_xy;
  if (cfg.L_yx) p.L_yx = *cfg.L_yx;
  if (cfg.L_yy) p.L_yy = *cfg.L_yy;
  p.C_X = cfg.C_X;
  p.C_Y = cfg.C_Y;
  p.check();
  return p;
}

double default_gamma_bar(double L_x, double L_y) {
  const double g = 1.0 / std::max(L_x, L_y);
  return std::clamp(g, 1e-12, 0.999);
}

ScheduleKind schedule_kind_for(const std::string& method) {
  return method == "svr-apd-poly" ? ScheduleKind::kPolynomial : ScheduleKind::kConstant;
}

ParameterSchedule build_schedule(const RunConfig& cfg, const SaddlePointProblem& problem,
                                 ScheduleKind kind) {
  const LipschitzProfile profile = resolve_profile(cfg, problem);
  const auto n = static_cast<std::int64_t>(problem.num_components());
  // L_x, L_y do not depend on gamma_bar; a probe schedule supplies them.
  const ParameterSchedule probe = ParameterSchedule::Constant(profile, n, cfg.T, 0.5, 0.5);
  const double fallback = default_gamma_bar(probe.L_x(), probe.L_y());
  const double gx = cfg.gamma_bar_x.value_or(fallback);
  const double gy = cfg.gamma_bar_y.value_or(fallback);
  const ParameterSchedule base = kind == ScheduleKind::kConstant
                                     ? ParameterSchedule::Constant(profile, n, cfg.T, gx, gy)
                                     : ParameterSchedule::Polynomial(profile, n, cfg.T, gx, gy);
  return base.with_step_scale(cfg.tau_scale, cfg.sigma_scale);
}

ApdFullOptions reference_options(const RunConfig& cfg) {
  ApdFullOptions o;
  o.tol = cfg.reference_tol;
  o.max_iters = cfg.reference_max_iters;
  o.gamma_bar = cfg.reference_gamma_bar;
  o.tau_scale = cfg.reference_tau_scale;
  o.sigma_scale = cfg.reference_sigma_scale;
  return o;
}

std::string reference_path_for(const RunConfig& cfg) {
  return cfg.reference_path.empty() ? cfg.out + ".ref" : cfg.reference_path;
}

ReferenceSaddle obtain_reference(const RunConfig& cfg, const SaddlePointProblem& problem,
                                 const GeometryPair& geoms, bool compute_if_missing) {
  const std::string path = reference_path_for(cfg);
  if (std::filesystem::exists(path)) {
    ReferenceSaddle ref = load_reference(path);
    if (ref.problem_fingerprint == problem.fingerprint()) {
      saddle_oracle().insert(ref);
      return ref;
    }
    if (!compute_if_missing) {
      throw std::runtime_error("reference '" + path + "' belongs to a different problem");
    }
  } else if (!compute_if_missing) {
    throw std::runtime_error("reference saddle '" + path +
                             "' not found; run compute-reference or pass --compute-reference");
  }
  const ReferenceSaddle& ref =
      saddle_oracle().get(problem, geoms, reference_options(cfg), format_hex64(config_hash(cfg)));
  save_reference(path, ref);
  return ref;
}

MethodRun run_method(const RunConfig& cfg, const SaddlePointProblem& problem,
                     const GeometryPair& geoms, const ReferenceSaddle& ref,
                     const std::string& method) {
  MethodRun run;
  run.method = method;
  GapEvaluator gap(problem, ref);
  const auto n = static_cast<std::int64_t>(problem.num_components());

  try {
    if (is_svrapd(method)) {
      const ScheduleKind kind = schedule_kind_for(method);
      run.schedule = to_string(kind);
      const ParameterSchedule schedule = build_schedule(cfg, problem, kind);
      run.tuned = {{"gamma_bar_x", format_double(schedule.gbar_x())},
                   {"gamma_bar_y", format_double(schedule.gbar_y())},
                   {"L_x", format_double(schedule.L_x())},
                   {"L_y", format_double(schedule.L_y())}};
      SolverOptions so;
      so.cache_snapshot_gradients = cfg.cache_snapshot;
      so.budget = cfg.budget;
      const SvrApdSolver solver(problem, geoms, schedule, so);
      const SolveResult res = solver.run(cfg.epochs, cfg.seed, [&](const EpochRecord& r) {
        run.rows.push_back(LogRow{method, run.schedule, cfg.seed, r.epoch, r.oracle_units, r.wall_ms,
                                  gap(*r.last), gap(*r.ergodic)});
      });
      run.oracle_units = res.oracle_units;
    } else if (method == "apd-full") {
      run.schedule = "constant";
      const ApdFullOptions opts = reference_options(cfg);
      const std::int64_t per_epoch = 5 * n;
      const std::int64_t cadence =
          std::max<std::int64_t>(1, cfg.budget / per_epoch / cfg.log_points);
      const SolveResult res = run_apd_full(
          problem, geoms, opts, cfg.budget, std::numeric_limits<std::int64_t>::max(),
          [&](const EpochRecord& r) {
            if (r.epoch % cadence != 0) return;
            run.rows.push_back(LogRow{method, run.schedule, cfg.seed, r.epoch, r.oracle_units,
                                      r.wall_ms, gap(*r.last), gap(*r.ergodic)});
          });
      if (run.rows.empty() || run.rows.back().oracle_units != res.oracle_units) {
        run.rows.push_back(LogRow{method, run.schedule, cfg.seed, res.epochs, res.oracle_units,
                                  res.wall_ms, gap(res.last), gap(res.ergodic)});
      }
      run.tuned = {{"reference_tau_scale", format_double(opts.tau_scale)},
                   {"reference_sigma_scale", format_double(opts.sigma_scale)}};
      run.oracle_units = res.oracle_units;
    } else if (method == "smd" || method == "smp") {
      const StochasticMethod sm = method == "smd" ? StochasticMethod::kSmd : StochasticMethod::kSmp;
      run.schedule = "c/sqrt(t+1)";
      StochasticOptions so;
      so.budget = cfg.budget;
      so.seed = cfg.seed;
      so.log_interval =
          std::max<std::int64_t>(1, cfg.budget / units_per_step(sm) / cfg.log_points);

      auto attempt = [&](double c, std::vector<LogRow>& rows, GapEvaluator& g) {
        so.step_constant = c;
        const BaselineResult r = run_stochastic(sm, problem, geoms, so, [&](const BaselineRecord& b) {
          rows.push_back(LogRow{method, run.schedule, cfg.seed, b.iteration, b.oracle_units,
                                b.wall_ms, g(*b.last), g(*b.average)});
        });
        return r.oracle_units;
      };

      if (cfg.step_constant) {
        run.oracle_units = attempt(*cfg.step_constant, run.rows, gap);
        run.tuned = {{"step_constant", format_double(*cfg.step_constant)}};
      } else {
        double best_gap = std::numeric_limits<double>::infinity();
        double best_c = cfg.step_grid.front();
        std::string scores;
        for (double c : cfg.step_grid) {
          std::vector<LogRow> rows;
          GapEvaluator g(problem, ref);
          double final_gap = std::numeric_limits<double>::infinity();
          std::int64_t units = 0;
          try {
            units = attempt(c, rows, g);
            if (!rows.empty() && std::isfinite(rows.back().gap_ergodic)) final_gap = rows.back().gap_ergodic;
          } catch (const NonFiniteIterate&) {
          }
          if (!scores.empty()) scores += ';';
          scores += format_double(c) + ":" + format_double(final_gap);
          if (final_gap < best_gap) {
            best_gap = final_gap;
            best_c = c;
            run.rows = std::move(rows);
            run.oracle_units = units;
            run.clamped_gaps = g.clamped();
          }
        }
        if (!std::isfinite(best_gap)) throw std::runtime_error("every step constant in the grid failed");
        run.tuned = {{"step_constant", format_double(best_c)},
                     {"step_grid", format_double(cfg.step_grid.front()) + ".." +
                                       format_double(cfg.step_grid.back())},
                     {"grid_final_gaps", scores}};
        return run;
      }
    } else {
      throw std::invalid_argument("unknown method '" + method + "'");
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    run.truncated = true;
    run.truncation_reason = e.what();
  }
  run.clamped_gaps = gap.clamped();
  return run;
}

Metadata run_metadata(const RunConfig& cfg, const Instance& instance, const MethodRun& run,
                      const ReferenceSaddle& ref) {
  Metadata m;
  m.emplace_back("method", run.method);
  m.emplace_back("schedule", run.schedule);
  m.emplace_back("seed", std::to_string(cfg.seed));
  m.emplace_back("dataset_id", instance.dataset_id);
  m.emplace_back("config_hash", format_hex64(config_hash(cfg)));
  m.emplace_back("problem", instance.problem->describe());
  m.emplace_back("reference_residual", format_double(ref.residual));
  m.emplace_back("reference_converged", ref.converged ? "true" : "false");
  m.emplace_back("clamped_gaps", std::to_string(run.clamped_gaps));
  for (const auto& [k, v] : run.tuned) m.emplace_back("tuned." + k, v);
  for (const auto& [k, v] : config_echo(cfg)) m.emplace_back("config." + k, v);
  return m;
}

void write_run(std::ostream& out, const Metadata& metadata, const MethodRun& run) {
  CsvLogWriter writer(out);
  writer.write_header(metadata);
  for (const auto& row : run.rows) writer.write_row(row);
  if (run.truncated) writer.mark_truncated(run.truncation_reason);
  writer.flush();
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) return std::nullopt;
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

ReplaySummary summarize_run(const RunLogFile& log, std::int64_t k_min, std::int64_t k_max) {
  ReplaySummary s;
  s.rows = log.rows.size();
  s.truncated = log.truncated;
  s.truncation_reason = log.truncation_reason;
  if (log.rows.empty()) return s;
  const LogRow& last = log.rows.back();
  s.final_gap_last = last.gap_last;
  s.final_gap_ergodic = last.gap_ergodic;
  s.total_units = last.oracle_units;
  std::vector<double> k, g;
  for (const auto& r : log.rows) {
    if (r.epoch >= k_min && r.epoch <= k_max) {
      k.push_back(static_cast<double>(r.epoch));
      g.push_back(r.gap_ergodic);
    }
  }
  s.slope = loglog_slope(k, g);
  return s;
}

bool report_schedule(std::ostream& out, const ParameterSchedule& schedule,
                     const LipschitzProfile& profile, std::int64_t epochs) {
  const auto& p = profile;
  out << "schedule " << to_string(schedule.kind()) << ", n=" << schedule.n()
      << ", T=" << format_double(schedule.T()) << ", gamma_bar_x=" << format_double(schedule.gbar_x())
      << ", gamma_bar_y=" << format_double(schedule.gbar_y()) << '\n';
  out << "profile L_xx=" << format_double(p.L_xx) << " L_xy=" << format_double(p.L_xy)
      << " L_yx=" << format_double(p.L_yx) << " L_yy=" << format_double(p.L_yy)
      << " C_X=" << format_double(p.C_X) << " C_Y=" << format_double(p.C_Y) << '\n';
  out << "L_x=" << format_double(schedule.L_x()) << " L_y=" << format_double(schedule.L_y())
      << " alpha=" << format_double(schedule.alpha()) << " beta=" << format_double(schedule.beta())
      << '\n';
  if (schedule.beta() == 0.0) out << "note: L_yy = 0, so beta = 0 and L_yy^2/beta is taken as 0\n";
  if (schedule.tau_scale() != 1.0 || schedule.sigma_scale() != 1.0) {
    out << "step multipliers tau x" << format_double(schedule.tau_scale()) << ", sigma x"
        << format_double(schedule.sigma_scale()) << '\n';
  }
  out << "k,T_k,tau,sigma,gamma_x,gamma_y,eta,M_x,M_y,slack_gx,slack_gy,slack_Mx,slack_My,pass\n";
  bool all = true;
  for (std::int64_t k = 1; k <= epochs; ++k) {
    const ValidationReport r = validate(schedule, profile, k);
    const auto& e = r.params;
    out << k << ',' << e.inner_steps << ',' << format_double(e.tau) << ',' << format_double(e.sigma)
        << ',' << format_double(e.gamma_x) << ',' << format_double(e.gamma_y) << ','
        << (e.eta ? format_double(*e.eta) : "infeasible") << ',' << format_double(r.M_x) << ','
        << format_double(r.M_y);
    for (const auto& c : r.checks) out << ',' << format_double(c.slack());
    out << ',' << (r.passed() ? "yes" : "no") << '\n';
    if (!r.passed()) all = false;
  }
  out << (all ? "all step-size conditions hold\n" : "step-size conditions violated\n");
  return all;
}

}  // namespace svrapd
