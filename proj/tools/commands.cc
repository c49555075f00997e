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

#include "commands.h"

#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "svrapd/experiment.h"
#include "svrapd/libsvm.h"
#include "svrapd/text.h"

namespace svrapd::cli {

namespace fs = std::filesystem;

RunConfig resolve_config(const Overrides& o) {
  RunConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw std::runtime_error("cannot open config '" + o.config_path + "'");
    cfg = parse_config(in, o.config_path);
  }
  if (o.method) cfg.method = *o.method;
  if (o.dataset) cfg.dataset = *o.dataset;
  if (o.budget) cfg.budget = *o.budget;
  if (o.epochs) cfg.epochs = *o.epochs;
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out = *o.out;
  if (o.rho) cfg.rho = *o.rho;
  if (o.box) cfg.box = *o.box;
  if (o.lambda_max) cfg.lambda_max = *o.lambda_max;
  if (o.subsample) cfg.subsample = *o.subsample;
  for (const auto& kv : o.settings) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    set_config_value(cfg, std::string(trim(std::string_view(kv).substr(0, eq))),
                     std::string(trim(std::string_view(kv).substr(eq + 1))));
  }
  validate_config(cfg);
  return cfg;
}

std::string per_method_path(const std::string& out, const std::string& method) {
  const fs::path p(out);
  fs::path name = p.stem();
  name += "." + method;
  name += p.extension().empty() ? fs::path(".csv") : p.extension();
  return (p.parent_path() / name).string();
}

namespace {

struct MethodOutcome {
  std::string path;
  std::string message;
  bool ok = true;
};

MethodOutcome run_one(const RunConfig& cfg, const Instance& inst, const GeometryPair& geoms,
                      const ReferenceSaddle& ref, const std::string& method,
                      const std::string& path) {
  MethodOutcome res;
  res.path = path;
  MethodRun run = run_method(cfg, *inst.problem, geoms, ref, method);
  RunConfig echoed = cfg;
  echoed.method = method;
  echoed.out = path;
  std::ofstream file(path);
  if (!file) {
    res.ok = false;
    res.message = "cannot write '" + path + "'";
    return res;
  }
  write_run(file, run_metadata(echoed, inst, run, ref), run);
  std::ostringstream msg;
  msg << method << ": " << run.rows.size() << " rows, " << run.oracle_units << " oracle units";
  if (!run.rows.empty()) {
    msg << ", final gap_last " << format_double(run.rows.back().gap_last) << ", gap_ergodic "
        << format_double(run.rows.back().gap_ergodic);
  }
  for (const auto& [k, v] : run.tuned) {
    if (k == "step_constant") msg << ", step constant " << v;
  }
  msg << " -> " << path;
  if (run.truncated) {
    res.ok = false;
    msg << " (TRUNCATED: " << run.truncation_reason << ")";
  }
  res.message = msg.str();
  return res;
}

}  // namespace

int cmd_run(const RunConfig& cfg, bool compute_reference, bool all_methods, std::ostream& out,
            std::ostream& err) {
  if (all_methods && cfg.budget <= 0) {
    err << "error: --all-methods needs a positive --budget\n";
    return kExitError;
  }
  const Instance inst = build_instance(cfg);
  const GeometryPair geoms = default_geometries(*inst.problem);
  const ReferenceSaddle ref = obtain_reference(cfg, *inst.problem, geoms, compute_reference);
  if (!ref.converged) {
    err << "warning: reference saddle not converged (residual " << format_double(ref.residual)
        << ")\n";
  }

  std::vector<std::string> methods;
  if (all_methods) {
    methods.assign(std::begin(kMethods), std::end(kMethods));
  } else {
    methods.push_back(cfg.method);
  }

  std::vector<MethodOutcome> outcomes(methods.size());
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const std::string path = all_methods ? per_method_path(cfg.out, methods[i]) : cfg.out;
    workers.emplace_back([&, i, path] {
      try {
        outcomes[i] = run_one(cfg, inst, geoms, ref, methods[i], path);
      } catch (const std::exception& e) {
        outcomes[i] = {path, methods[i] + ": " + e.what(), false};
      }
    });
  }
  for (auto& w : workers) w.join();

  int status = kExitOk;
  for (const auto& o : outcomes) {
    (o.ok ? out : err) << o.message << '\n';
    if (!o.ok) status = kExitError;
  }
  return status;
}

int cmd_validate_schedule(const RunConfig& cfg, std::ostream& out) {
  const Instance inst = build_instance(cfg);
  const LipschitzProfile profile = resolve_profile(cfg, *inst.problem);
  const ScheduleKind kind = schedule_kind_for(cfg.method);
  const ParameterSchedule schedule = build_schedule(cfg, *inst.problem, kind);
  out << "dataset " << inst.dataset_id << '\n';
  return report_schedule(out, schedule, profile, cfg.epochs) ? kExitOk : kExitViolation;
}

int cmd_compute_reference(const RunConfig& cfg, std::ostream& out) {
  const Instance inst = build_instance(cfg);
  const GeometryPair geoms = default_geometries(*inst.problem);
  const ReferenceSaddle ref =
      compute_reference(*inst.problem, geoms, reference_options(cfg), format_hex64(config_hash(cfg)));
  const std::string path = reference_path_for(cfg);
  save_reference(path, ref);
  out << "reference for " << inst.dataset_id << ": residual " << format_double(ref.residual)
      << (ref.converged ? " (converged)" : " (NOT converged)") << " -> " << path << '\n';
  return ref.converged ? kExitOk : kExitNotConverged;
}

int cmd_replay(const std::string& path, std::int64_t k_min, std::int64_t k_max,
               std::ostream& out) {
  const RunLogFile log = load_run_log(path);
  const ReplaySummary s = summarize_run(log, k_min, k_max);
  const std::string method = log.meta("method");
  out << "file " << path << '\n';
  if (!method.empty()) out << "method " << method << '\n';
  out << "rows " << s.rows << '\n';
  if (s.rows > 0) {
    out << "final gap_last " << format_double(s.final_gap_last) << '\n';
    out << "final gap_ergodic " << format_double(s.final_gap_ergodic) << '\n';
  }
  out << "total oracle units " << s.total_units << '\n';
  out << "log-log slope of gap_ergodic vs epoch over [" << k_min << ", " << k_max << "] "
      << (s.slope ? format_double(*s.slope) : std::string("undefined")) << '\n';
  if (s.truncated) out << "truncated: " << s.truncation_reason << '\n';
  return kExitOk;
}

const std::vector<KnownDataset>& known_datasets() {
  static const std::vector<KnownDataset> list = {
      {"mushrooms", "https://www.csie.ntu.edu.tw/~cjlin/libsvmtools/datasets/binary/mushrooms",
       8124, 112},
      {"phishing", "https://www.csie.ntu.edu.tw/~cjlin/libsvmtools/datasets/binary/phishing",
       11055, 64},
      {"a7a", "https://www.csie.ntu.edu.tw/~cjlin/libsvmtools/datasets/binary/a7a", 16100, 122},
  };
  return list;
}

int cmd_fetch_data(const std::string& dir, bool download, std::ostream& out, std::ostream& err) {
  fs::create_directories(dir);
  int status = kExitOk;
  for (const auto& d : known_datasets()) {
    const fs::path path = fs::path(dir) / d.file;
    if (!fs::exists(path) && download) {
      const std::string cmd = "curl -fsSL -o '" + path.string() + "' '" + d.url + "'";
      out << "fetching " << d.file << '\n';
      if (std::system(cmd.c_str()) != 0) {
        err << "warning: download of " << d.file << " failed\n";
        fs::remove(path);
      }
    }
    if (!fs::exists(path)) {
      out << d.file << ": missing (expected " << d.samples << "x" << d.features << ")\n";
      status = kExitError;
      continue;
    }
    try {
      const SparseDataset data = load_libsvm(path.string());
      const bool match = data.n_samples() == d.samples && data.n_features == d.features;
      out << d.file << ": " << data.n_samples() << "x" << data.n_features
          << (match ? " (matches " : " (differs from ") << d.samples << "x" << d.features
          << ")\n";
    } catch (const std::exception& e) {
      err << d.file << ": " << e.what() << '\n';
      status = kExitError;
    }
  }
  return status;
}

}  // namespace svrapd::cli
