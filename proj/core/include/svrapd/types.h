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

#ifndef SVRAPD_TYPES_H_
#define SVRAPD_TYPES_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace svrapd {

using Vector = std::vector<double>;
using ConstSpan = std::span<const double>;
using MutableSpan = std::span<double>;

// Coordinatewise box [lower, upper].
struct Box {
  Vector lower;
  Vector upper;

  static Box Uniform(std::size_t dim, double lo, double hi) {
    return Box{Vector(dim, lo), Vector(dim, hi)};
  }

  std::size_t dim() const { return lower.size(); }
  bool contains(ConstSpan x) const;
  Vector center() const;
  // Throws std::invalid_argument unless lower <= upper and both are finite.
  void check() const;
};

// Probability simplex {y >= 0, sum(y) = 1} of the given dimension.
struct Simplex {
  std::size_t dim = 0;

  bool contains(ConstSpan y, double sum_tol = 1e-9) const;
  Vector uniform() const { return Vector(dim, 1.0 / static_cast<double>(dim)); }
};

// A primal iterate x together with its dual partner y.
struct PrimalDualPoint {
  Vector x;
  Vector y;

  friend bool operator==(const PrimalDualPoint&, const PrimalDualPoint&) = default;
};

// Raised when an iterate coordinate becomes NaN or infinite.
class NonFiniteIterate : public std::runtime_error {
 public:
  NonFiniteIterate(const std::string& what, PrimalDualPoint snapshot)
      : std::runtime_error(what), snapshot_(std::move(snapshot)) {}
  const PrimalDualPoint& snapshot() const { return snapshot_; }

 private:
  PrimalDualPoint snapshot_;
};

}  // namespace svrapd

#endif  // SVRAPD_TYPES_H_
