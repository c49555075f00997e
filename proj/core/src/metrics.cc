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

#include "svrapd/metrics.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "svrapd/text.h"

namespace svrapd {

ReferenceSaddle compute_reference(const SaddlePointProblem& problem, const GeometryPair& geoms,
                                  const ApdFullOptions& options, std::string provenance) {
  const ApdFullResult r = apd_full_solve(problem, geoms, options);
  ReferenceSaddle ref;
  ref.point = r.point;
  ref.residual = r.residual;
  ref.converged = r.converged;
  ref.problem_fingerprint = problem.fingerprint();
  ref.provenance = std::move(provenance);
  return ref;
}

const ReferenceSaddle& SaddleOracle::get(const SaddlePointProblem& problem,
                                         const GeometryPair& geoms, const ApdFullOptions& options,
                                         const std::string& provenance) {
  const std::uint64_t key = problem.fingerprint();
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(key);
  if (it != cache_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  return cache_.emplace(key, compute_reference(problem, geoms, options, provenance)).first->second;
}

void SaddleOracle::insert(ReferenceSaddle ref) {
  std::lock_guard<std::mutex> lock(mu_);
  const std::uint64_t key = ref.problem_fingerprint;
  cache_.insert_or_assign(key, std::move(ref));
}

std::int64_t SaddleOracle::hits() const {
  std::lock_guard<std::mutex> lock(mu_);
  return hits_;
}

std::int64_t SaddleOracle::misses() const {
  std::lock_guard<std::mutex> lock(mu_);
  return misses_;
}

SaddleOracle& saddle_oracle() {
  static SaddleOracle oracle;
  return oracle;
}

double raw_gap(const SaddlePointProblem& problem, const PrimalDualPoint& candidate,
               const ReferenceSaddle& ref) {
  problem.check_dims(candidate.x, candidate.y);
  problem.check_dims(ref.point.x, ref.point.y);
  if (!is_feasible(problem, candidate)) throw std::invalid_argument("gap: infeasible candidate");
  if (!is_feasible(problem, ref.point)) throw std::invalid_argument("gap: infeasible reference");
  return problem.coupling_value(candidate.x, ref.point.y) -
         problem.coupling_value(ref.point.x, candidate.y);
}

GapEvaluator::GapEvaluator(const SaddlePointProblem& problem, const ReferenceSaddle& ref,
                           double clamp_factor)
    : problem_(problem), ref_(ref), threshold_(clamp_factor * ref.residual) {
  if (!(clamp_factor >= 0.0)) throw std::invalid_argument("GapEvaluator: negative clamp factor");
}

double GapEvaluator::operator()(const PrimalDualPoint& candidate) {
  const double g = raw_gap(problem_, candidate, ref_);
  ++evaluations_;
  if (g >= 0.0) return g;
  if (g >= -threshold_) {
    ++clamped_;
    return 0.0;
  }
  ++below_tolerance_;
  return g;
}

namespace {

void write_vector(std::ostream& out, const char* tag, const Vector& v) {
  out << tag << ' ' << std::to_string(v.size());
  for (double e : v) out << ' ' << format_double(e);
  out << '\n';
}

Vector read_vector(std::istringstream& line, const std::string& tag) {
  std::string count;
  line >> count;
  const auto n = parse_uint(count, tag + " length");
  Vector v(n);
  std::string tok;
  for (auto& e : v) {
    if (!(line >> tok)) throw std::runtime_error("reference file: short " + tag + " vector");
    e = parse_double(tok, tag);
  }
  if (line >> tok) throw std::runtime_error("reference file: excess entries in " + tag);
  return v;
}

}  // namespace

void write_reference(std::ostream& out, const ReferenceSaddle& ref) {
  out << "# reference saddle point\n";
  out << "fingerprint " << format_hex64(ref.problem_fingerprint) << '\n';
  out << "residual " << format_double(ref.residual) << '\n';
  out << "converged " << (ref.converged ? 1 : 0) << '\n';
  out << "provenance " << (ref.provenance.empty() ? "-" : ref.provenance) << '\n';
  write_vector(out, "x", ref.point.x);
  write_vector(out, "y", ref.point.y);
}

ReferenceSaddle read_reference(std::istream& in) {
  ReferenceSaddle ref;
  bool have_x = false, have_y = false, have_fp = false;
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string_view t = trim(raw);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream line{std::string(t)};
    std::string key;
    line >> key;
    std::string value;
    if (key == "fingerprint") {
      line >> value;
      ref.problem_fingerprint = parse_hex64(value, "fingerprint");
      have_fp = true;
    } else if (key == "residual") {
      line >> value;
      ref.residual = parse_double(value, "residual");
    } else if (key == "converged") {
      line >> value;
      ref.converged = parse_bool(value, "converged");
    } else if (key == "provenance") {
      line >> value;
      ref.provenance = value == "-" ? "" : value;
    } else if (key == "x") {
      ref.point.x = read_vector(line, "x");
      have_x = true;
    } else if (key == "y") {
      ref.point.y = read_vector(line, "y");
      have_y = true;
    } else {
      throw std::runtime_error("reference file: unknown key '" + key + "'");
    }
  }
  if (!have_fp || !have_x || !have_y) throw std::runtime_error("reference file: incomplete");
  return ref;
}

void save_reference(const std::string& path, const ReferenceSaddle& ref) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_reference(out, ref);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

ReferenceSaddle load_reference(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_reference(in);
}

}  // namespace svrapd
