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

#ifndef SVRAPD_LIBSVM_H_
#define SVRAPD_LIBSVM_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace svrapd {

// Sparse labeled dataset. Feature indices are 0-based and strictly
// increasing within a row; labels are -1 or +1.
struct SparseDataset {
  using Entry = std::pair<std::uint32_t, double>;

  std::size_t n_features = 0;
  std::vector<std::vector<Entry>> rows;
  std::vector<double> labels;

  std::size_t n_samples() const { return rows.size(); }
  std::size_t nonzeros() const;

  friend bool operator==(const SparseDataset&, const SparseDataset&) = default;
};

// Reads "<label> <index>:<value> ..." lines with 1-based indices. Labels are
// normalized: if they are not already within {-1, +1}, the smaller of the two
// distinct values maps to -1 and the larger to +1 (covers 0/1 and 1/2
// encodings). Errors carry the 1-based line number. The feature count is the
// largest index seen unless `n_features` is given; a smaller override than
// the data requires is an error.
SparseDataset parse_libsvm(std::istream& in, std::optional<std::size_t> n_features = {});
SparseDataset load_libsvm(const std::string& path, std::optional<std::size_t> n_features = {});

void write_libsvm(std::ostream& out, const SparseDataset& data);

// Row-major n_samples x n_features.
std::vector<double> to_dense(const SparseDataset& data);

// n rows chosen uniformly without replacement (original order kept).
// Returns the full dataset when n >= n_samples.
SparseDataset subsample(const SparseDataset& data, std::size_t n, std::uint64_t seed);

// Divides every feature by its largest absolute value so entries lie in [-1, 1].
SparseDataset scale_features(const SparseDataset& data);

}  // namespace svrapd

#endif  // SVRAPD_LIBSVM_H_
