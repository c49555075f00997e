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

#include "svrapd/config.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "svrapd/problem.h"
#include "svrapd/text.h"

namespace svrapd {

namespace {

struct KeySpec {
  const char* name;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

std::optional<double> parse_optional(std::string_view v, const char* key) {
  if (trim(v) == "auto") return std::nullopt;
  return parse_double(v, key);
}

std::string show_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : "auto";
}

std::vector<double> parse_list(std::string_view v, const char* key) {
  std::vector<double> out;
  for (auto part : split(v, ',')) out.push_back(parse_double(part, key));
  return out;
}

std::string show_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

#define SVRAPD_STRING_KEY(field)                                                   \
  KeySpec {                                                                        \
    #field, [](RunConfig& c, std::string_view v) { c.field = std::string(trim(v)); }, \
        [](const RunConfig& c) { return c.field; }                                 \
  }
#define SVRAPD_DOUBLE_KEY(field)                                                         \
  KeySpec {                                                                              \
    #field, [](RunConfig& c, std::string_view v) { c.field = parse_double(v, #field); }, \
        [](const RunConfig& c) { return format_double(c.field); }                        \
  }
#define SVRAPD_INT_KEY(field)                                                         \
  KeySpec {                                                                           \
    #field, [](RunConfig& c, std::string_view v) { c.field = parse_int(v, #field); }, \
        [](const RunConfig& c) { return std::to_string(c.field); }                    \
  }
#define SVRAPD_UINT_KEY(field)                                                         \
  KeySpec {                                                                            \
    #field, [](RunConfig& c, std::string_view v) { c.field = parse_uint(v, #field); }, \
        [](const RunConfig& c) { return std::to_string(c.field); }                     \
  }
#define SVRAPD_BOOL_KEY(field)                                                         \
  KeySpec {                                                                            \
    #field, [](RunConfig& c, std::string_view v) { c.field = parse_bool(v, #field); }, \
        [](const RunConfig& c) { return std::string(c.field ? "true" : "false"); }     \
  }
#define SVRAPD_OPTIONAL_KEY(field)                                                         \
  KeySpec {                                                                                \
    #field, [](RunConfig& c, std::string_view v) { c.field = parse_optional(v, #field); }, \
        [](const RunConfig& c) { return show_optional(c.field); }                          \
  }

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      SVRAPD_STRING_KEY(dataset),
      SVRAPD_INT_KEY(synthetic_n),
      SVRAPD_INT_KEY(synthetic_m),
      SVRAPD_UINT_KEY(synthetic_seed),
      SVRAPD_DOUBLE_KEY(rho),
      SVRAPD_DOUBLE_KEY(box),
      SVRAPD_DOUBLE_KEY(lambda_max),
      SVRAPD_INT_KEY(subsample),
      SVRAPD_UINT_KEY(subsample_seed),
      SVRAPD_BOOL_KEY(scale_features),
      SVRAPD_STRING_KEY(method),
      SVRAPD_DOUBLE_KEY(T),
      SVRAPD_OPTIONAL_KEY(gamma_bar_x),
      SVRAPD_OPTIONAL_KEY(gamma_bar_y),
      SVRAPD_DOUBLE_KEY(tau_scale),
      SVRAPD_DOUBLE_KEY(sigma_scale),
      SVRAPD_OPTIONAL_KEY(L_xx),
      SVRAPD_OPTIONAL_KEY(L_xy),
      SVRAPD_OPTIONAL_KEY(L_yx),
      SVRAPD_OPTIONAL_KEY(L_yy),
      SVRAPD_DOUBLE_KEY(C_X),
      SVRAPD_DOUBLE_KEY(C_Y),
      SVRAPD_BOOL_KEY(cache_snapshot),
      SVRAPD_OPTIONAL_KEY(step_constant),
      KeySpec{"step_grid",
              [](RunConfig& c, std::string_view v) { c.step_grid = parse_list(v, "step_grid"); },
              [](const RunConfig& c) { return show_list(c.step_grid); }},
      SVRAPD_INT_KEY(epochs),
      SVRAPD_INT_KEY(budget),
      SVRAPD_UINT_KEY(seed),
      SVRAPD_INT_KEY(log_points),
      SVRAPD_STRING_KEY(out),
      SVRAPD_DOUBLE_KEY(reference_tol),
      SVRAPD_INT_KEY(reference_max_iters),
      SVRAPD_DOUBLE_KEY(reference_gamma_bar),
      SVRAPD_DOUBLE_KEY(reference_tau_scale),
      SVRAPD_DOUBLE_KEY(reference_sigma_scale),
      SVRAPD_STRING_KEY(reference_path),
  };
  return table;
}

#undef SVRAPD_STRING_KEY
#undef SVRAPD_DOUBLE_KEY
#undef SVRAPD_INT_KEY
#undef SVRAPD_UINT_KEY
#undef SVRAPD_BOOL_KEY
#undef SVRAPD_OPTIONAL_KEY

const KeySpec* find_key(std::string_view name) {
  for (const auto& k : key_table()) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument("config: " + msg);
}

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  const KeySpec* spec = find_key(key);
  if (!spec) throw std::invalid_argument("config: unknown key '" + key + "'");
  spec->set(cfg, value);
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument(where + ": malformed section header");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(where + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!find_key(key)) throw std::invalid_argument(where + ": unknown key '" + key + "'");
    if (!seen.insert(key).second) {
      throw std::invalid_argument(where + ": key '" + key + "' given more than once");
    }
    try {
      set_config_value(cfg, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  RunConfig cfg = parse_config(in, path);
  validate_config(cfg);
  return cfg;
}

std::string resolve_dataset_path(const std::string& dataset) {
  namespace fs = std::filesystem;
  if (fs::exists(dataset)) return dataset;
  if (const char* dir = std::getenv("SVRAPD_DATA_DIR")) {
    const fs::path candidate = fs::path(dir) / dataset;
    if (fs::exists(candidate)) return candidate.string();
  }
  throw std::invalid_argument("config: dataset '" + dataset +
                              "' not found (also looked under $SVRAPD_DATA_DIR)");
}

void validate_config(const RunConfig& c) {
  require(std::find_if(std::begin(kMethods), std::end(kMethods),
                       [&](const char* m) { return c.method == m; }) != std::end(kMethods),
          "unknown method '" + c.method + "'");
  if (c.dataset == "synthetic") {
    require(c.synthetic_n >= 1 && c.synthetic_m >= 1, "synthetic_n and synthetic_m must be >= 1");
  } else {
    resolve_dataset_path(c.dataset);
  }
  require(std::isfinite(c.rho) && c.rho >= 0.0, "rho must be finite and nonnegative");
  require(positive_finite(c.box), "box must be positive");
  require(positive_finite(c.lambda_max), "lambda_max must be positive");
  require(c.subsample >= 0, "subsample must be >= 0");
  require(positive_finite(c.T), "T must be positive");
  for (const auto& g : {c.gamma_bar_x, c.gamma_bar_y}) {
    require(!g || (*g > 0.0 && *g < 1.0), "gamma_bar values must lie in (0, 1)");
  }
  require(positive_finite(c.tau_scale) && positive_finite(c.sigma_scale),
          "tau_scale and sigma_scale must be positive");
  for (const auto& l : {c.L_xx, c.L_yy}) require(!l || (std::isfinite(*l) && *l >= 0.0), "L_xx/L_yy must be >= 0");
  for (const auto& l : {c.L_xy, c.L_yx}) require(!l || positive_finite(*l), "L_xy/L_yx must be positive");
  require(c.C_X >= 1.0 && c.C_Y >= 1.0 && std::isfinite(c.C_X) && std::isfinite(c.C_Y),
          "C_X and C_Y must be >= 1");
  require(!c.step_constant || positive_finite(*c.step_constant), "step_constant must be positive");
  require(!c.step_grid.empty(), "step_grid must not be empty");
  for (double v : c.step_grid) require(positive_finite(v), "step_grid entries must be positive");
  require(c.epochs >= 1, "epochs must be >= 1");
  require(c.budget >= 0, "budget must be >= 0");
  require(c.log_points >= 1, "log_points must be >= 1");
  require(positive_finite(c.reference_tol), "reference_tol must be positive");
  require(c.reference_max_iters >= 1, "reference_max_iters must be >= 1");
  require(c.reference_gamma_bar > 0.0 && c.reference_gamma_bar < 1.0,
          "reference_gamma_bar must lie in (0, 1)");
  require(positive_finite(c.reference_tau_scale) && positive_finite(c.reference_sigma_scale),
          "reference step scales must be positive");
  if (c.method == "smd" || c.method == "smp" || c.method == "apd-full") {
    require(c.budget > 0, "method '" + c.method + "' needs a positive budget");
  }
}

Metadata config_echo(const RunConfig& cfg) {
  Metadata m;
  for (const auto& k : key_table()) m.emplace_back(k.name, k.get(cfg));
  return m;
}

std::string to_config_text(const RunConfig& cfg) {
  std::ostringstream os;
  for (const auto& [k, v] : config_echo(cfg)) os << k << " = " << v << '\n';
  return os.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
  Fingerprint fp;
  for (const auto& [k, v] : config_echo(cfg)) {
    if (k == "out" || k == "reference_path") continue;
    fp.add(k).add(v);
  }
  return fp.value();
}

}  // namespace svrapd
