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

#include "svrapd/libsvm.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

#include "svrapd/rng.h"
#include "svrapd/text.h"

namespace svrapd {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw std::runtime_error("libsvm line " + std::to_string(line) + ": " + msg);
}

}  // namespace

std::size_t SparseDataset::nonzeros() const {
  std::size_t nnz = 0;
  for (const auto& r : rows) nnz += r.size();
  return nnz;
}

SparseDataset parse_libsvm(std::istream& in, std::optional<std::size_t> n_features) {
  SparseDataset data;
  std::vector<double> raw_labels;
  std::size_t max_index = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    std::vector<std::string_view> tokens;
    for (auto tok : split(line, ' ')) {
      for (auto sub : split(tok, '\t')) {
        if (!sub.empty()) tokens.push_back(sub);
      }
    }
    double label = 0.0;
    try {
      label = parse_double(tokens[0], "label");
    } catch (const std::invalid_argument&) {
      fail(line_no, "malformed label '" + std::string(tokens[0]) + "'");
    }
    if (!std::isfinite(label)) fail(line_no, "non-finite label");
    std::vector<SparseDataset::Entry> row;
    std::int64_t previous = 0;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      const auto tok = tokens[k];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) fail(line_no, "expected index:value, got '" + std::string(tok) + "'");
      std::int64_t index = 0;
      double value = 0.0;
      try {
        index = parse_int(tok.substr(0, colon), "index");
        value = parse_double(tok.substr(colon + 1), "value");
      } catch (const std::invalid_argument&) {
        fail(line_no, "malformed token '" + std::string(tok) + "'");
      }
      if (index < 1) fail(line_no, "feature indices are 1-based, got " + std::to_string(index));
      if (index <= previous) fail(line_no, "feature indices must be strictly increasing");
      if (!std::isfinite(value)) fail(line_no, "non-finite feature value");
      previous = index;
      row.emplace_back(static_cast<std::uint32_t>(index - 1), value);
      max_index = std::max<std::size_t>(max_index, static_cast<std::size_t>(index));
    }
    data.rows.push_back(std::move(row));
    raw_labels.push_back(label);
  }
  if (n_features) {
    if (*n_features < max_index) {
      throw std::runtime_error("libsvm: data uses feature " + std::to_string(max_index) +
                               " but n_features=" + std::to_string(*n_features));
    }
    data.n_features = *n_features;
  } else {
    data.n_features = max_index;
  }

  const std::set<double> distinct(raw_labels.begin(), raw_labels.end());
  if (distinct.size() > 2) {
    throw std::runtime_error("libsvm: expected binary labels, found " +
                             std::to_string(distinct.size()) + " distinct values");
  }
  const bool signed_labels =
      std::all_of(distinct.begin(), distinct.end(), [](double v) { return v == 1.0 || v == -1.0; });
  data.labels.reserve(raw_labels.size());
  for (double v : raw_labels) {
    if (signed_labels) {
      data.labels.push_back(v);
    } else if (distinct.size() == 2) {
      data.labels.push_back(v == *distinct.begin() ? -1.0 : 1.0);
    } else {
      data.labels.push_back(v > 0.0 ? 1.0 : -1.0);
    }
  }
  return data;
}

SparseDataset load_libsvm(const std::string& path, std::optional<std::size_t> n_features) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
  return parse_libsvm(in, n_features);
}

void write_libsvm(std::ostream& out, const SparseDataset& data) {
  for (std::size_t i = 0; i < data.n_samples(); ++i) {
    out << (data.labels[i] > 0 ? "+1" : "-1");
    for (const auto& [index, value] : data.rows[i]) {
      out << ' ' << std::to_string(index + 1) << ':' << format_double(value);
    }
    out << '\n';
  }
}

std::vector<double> to_dense(const SparseDataset& data) {
  std::vector<double> dense(data.n_samples() * data.n_features, 0.0);
  for (std::size_t i = 0; i < data.n_samples(); ++i) {
    for (const auto& [index, value] : data.rows[i]) dense[i * data.n_features + index] = value;
  }
  return dense;
}

SparseDataset subsample(const SparseDataset& data, std::size_t n, std::uint64_t seed) {
  if (n >= data.n_samples()) return data;
  std::vector<std::size_t> order(data.n_samples());
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(splitmix64(seed ^ 0x5ab5a3b1eULL));
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(order.size() - i));
    std::swap(order[i], order[j]);
  }
  order.resize(n);
  std::sort(order.begin(), order.end());
  SparseDataset out;
  out.n_features = data.n_features;
  for (std::size_t i : order) {
    out.rows.push_back(data.rows[i]);
    out.labels.push_back(data.labels[i]);
  }
  return out;
}

SparseDataset scale_features(const SparseDataset& data) {
  std::vector<double> peak(data.n_features, 0.0);
  for (const auto& row : data.rows) {
    for (const auto& [index, value] : row) peak[index] = std::max(peak[index], std::abs(value));
  }
  SparseDataset out = data;
  for (auto& row : out.rows) {
    for (auto& [index, value] : row) {
      if (peak[index] > 0.0) value /= peak[index];
    }
  }
  return out;
}

}  // namespace svrapd
