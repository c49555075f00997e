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

#ifndef SVRAPD_RNG_H_
#define SVRAPD_RNG_H_

#include <cmath>
#include <cstdint>
#include <numbers>

namespace svrapd {

inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Which draw inside an inner step a sample belongs to.
enum class SampleSide : std::uint64_t { kDual = 0, kPrimal = 1, kAuxiliary = 2 };

// Counter-based index generator. A draw is a pure function of
// (seed, epoch, step, side), so trajectories do not depend on call order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits(std::uint64_t epoch, std::uint64_t step, SampleSide side,
                     std::uint64_t attempt = 0) const {
    std::uint64_t h = splitmix64(seed_);
    h = splitmix64(h ^ epoch);
    h = splitmix64(h ^ step);
    h = splitmix64(h ^ static_cast<std::uint64_t>(side));
    return splitmix64(h ^ attempt);
  }

  // Uniform index in [0, n), unbiased (Lemire's multiply-and-reject).
  std::uint64_t index(std::uint64_t n, std::uint64_t epoch, std::uint64_t step,
                      SampleSide side) const {
    const std::uint64_t threshold = (0 - n) % n;
    for (std::uint64_t attempt = 0;; ++attempt) {
      __extension__ using Wide = unsigned __int128;
      const Wide m = static_cast<Wide>(bits(epoch, step, side, attempt)) * n;
      if (static_cast<std::uint64_t>(m) >= threshold) {
        return static_cast<std::uint64_t>(m >> 64);
      }
    }
  }

 private:
  std::uint64_t seed_;
};

// Sequential generator for instance construction and test data.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (one value per call).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace svrapd

#endif  // SVRAPD_RNG_H_
