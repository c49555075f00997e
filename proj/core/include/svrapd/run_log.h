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

#ifndef SVRAPD_RUN_LOG_H_
#define SVRAPD_RUN_LOG_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace svrapd {

inline constexpr std::string_view kLogColumns =
    "method,schedule,seed,epoch,oracle_units,wall_ms,gap_last,gap_ergodic";

struct LogRow {
  std::string method;
  std::string schedule;
  std::uint64_t seed = 0;
  std::int64_t epoch = 0;
  std::int64_t oracle_units = 0;
  double wall_ms = 0.0;
  double gap_last = 0.0;
  double gap_ergodic = 0.0;

  friend bool operator==(const LogRow&, const LogRow&) = default;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

// CSV run log. Optional metadata goes first as "# key=value" lines, then
// the column line, then one line per row. A truncated run ends with a
// "# TRUNCATED: reason" line. Numbers are written locale-independently with
// 17 significant digits.
class CsvLogWriter {
 public:
  explicit CsvLogWriter(std::ostream& out) : out_(out) {}

  // Must be called exactly once, before any row.
  void write_header(const Metadata& metadata = {});
  // oracle_units must increase strictly from row to row.
  void write_row(const LogRow& row);
  void mark_truncated(const std::string& reason);
  void flush();

  std::int64_t rows_written() const { return rows_; }
  bool header_written() const { return header_written_; }

 private:
  void check_stream();

  std::ostream& out_;
  bool header_written_ = false;
  bool truncated_ = false;
  std::int64_t rows_ = 0;
  std::int64_t last_units_ = -1;
};

struct RunLogFile {
  Metadata metadata;
  std::vector<LogRow> rows;
  bool truncated = false;
  std::string truncation_reason;

  // Value of a metadata key, or empty.
  std::string meta(const std::string& key) const;
};

// Throws std::runtime_error on a schema mismatch, naming the line.
RunLogFile read_run_log(std::istream& in);
RunLogFile load_run_log(const std::string& path);

// RFC 4180 quoting for a single field.
std::string csv_field(std::string_view s);

}  // namespace svrapd

#endif  // SVRAPD_RUN_LOG_H_
