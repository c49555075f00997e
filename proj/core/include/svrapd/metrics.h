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

#ifndef SVRAPD_METRICS_H_
#define SVRAPD_METRICS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <mutex>
#include <string>

#include "svrapd/baselines.h"
#include "svrapd/problem.h"

namespace svrapd {

struct ReferenceSaddle {
  PrimalDualPoint point;
  // Natural residual at acceptance.
  double residual = 0.0;
  bool converged = false;
  std::uint64_t problem_fingerprint = 0;
  // Identifies the settings that produced the point (e.g. a config hash).
  std::string provenance;
};

// Runs apd_full_solve and packages the result.
ReferenceSaddle compute_reference(const SaddlePointProblem& problem, const GeometryPair& geoms,
                                  const ApdFullOptions& options, std::string provenance = {});

// Reference saddle points cached by problem fingerprint. Thread-safe; a
// second request for the same problem returns the stored object.
class SaddleOracle {
 public:
  const ReferenceSaddle& get(const SaddlePointProblem& problem, const GeometryPair& geoms,
                             const ApdFullOptions& options, const std::string& provenance = {});
  void insert(ReferenceSaddle ref);
  std::int64_t hits() const;
  std::int64_t misses() const;

 private:
  mutable std::mutex mu_;
  std::map<std::uint64_t, ReferenceSaddle> cache_;
  std::int64_t hits_ = 0;
  std::int64_t misses_ = 0;
};

SaddleOracle& saddle_oracle();

// L(x, y*) - L(x*, y) without clamping. Throws std::invalid_argument for
// infeasible candidates.
double raw_gap(const SaddlePointProblem& problem, const PrimalDualPoint& candidate,
               const ReferenceSaddle& ref);

// Gap with the clamp convention: values in [-10 * residual, 0) become 0 and
// are counted; values below that are returned unchanged and counted
// separately, since they indicate an inaccurate reference.
class GapEvaluator {
 public:
  GapEvaluator(const SaddlePointProblem& problem, const ReferenceSaddle& ref,
               double clamp_factor = 10.0);

  double operator()(const PrimalDualPoint& candidate);

  std::int64_t clamped() const { return clamped_; }
  std::int64_t below_tolerance() const { return below_tolerance_; }
  std::int64_t evaluations() const { return evaluations_; }
  double clamp_threshold() const { return threshold_; }

 private:
  const SaddlePointProblem& problem_;
  const ReferenceSaddle& ref_;
  double threshold_;
  std::int64_t clamped_ = 0;
  std::int64_t below_tolerance_ = 0;
  std::int64_t evaluations_ = 0;
};

// Plain-text persistence with full decimal precision.
void write_reference(std::ostream& out, const ReferenceSaddle& ref);
ReferenceSaddle read_reference(std::istream& in);
void save_reference(const std::string& path, const ReferenceSaddle& ref);
ReferenceSaddle load_reference(const std::string& path);

}  // namespace svrapd

#endif  // SVRAPD_METRICS_H_
