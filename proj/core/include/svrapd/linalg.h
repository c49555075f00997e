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

#ifndef SVRAPD_LINALG_H_
#define SVRAPD_LINALG_H_

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "svrapd/types.h"

// Small dense vector helpers. Everything here is O(dim) and allocation-free
// unless it returns a Vector.
namespace svrapd::linalg {

inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
  }
}

inline double dot(ConstSpan a, ConstSpan b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(ConstSpan a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(ConstSpan a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double norm1(ConstSpan a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

inline double sum(ConstSpan a) {
  double s = 0.0;
  for (double v : a) s += v;
  return s;
}

inline double dist2(ConstSpan a, ConstSpan b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

inline double dist_inf(ConstSpan a, ConstSpan b) {
  assert(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// y += alpha * x
inline void axpy(double alpha, ConstSpan x, MutableSpan y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(double alpha, MutableSpan x) {
  for (double& v : x) v *= alpha;
}

inline void fill(MutableSpan x, double value) { std::fill(x.begin(), x.end(), value); }

inline void copy(ConstSpan src, MutableSpan dst) {
  assert(src.size() == dst.size());
  std::copy(src.begin(), src.end(), dst.begin());
}

inline bool all_finite(ConstSpan x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

inline Vector subtract(ConstSpan a, ConstSpan b) {
  assert(a.size() == b.size());
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

}  // namespace svrapd::linalg

#endif  // SVRAPD_LINALG_H_
