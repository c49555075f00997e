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

#include "svrapd/run_log.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "svrapd/text.h"

namespace svrapd {

namespace {

constexpr std::string_view kTruncatedPrefix = "# TRUNCATED:";

// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> parse_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) throw std::runtime_error("run log line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void CsvLogWriter::check_stream() {
  if (!out_) throw std::runtime_error("run log: write failed");
}

void CsvLogWriter::write_header(const Metadata& metadata) {
  if (header_written_) throw std::logic_error("run log: header already written");
  for (const auto& [key, value] : metadata) {
    if (key.find_first_of("=\n") != std::string::npos || value.find('\n') != std::string::npos) {
      throw std::invalid_argument("run log: metadata '" + key + "' contains a separator");
    }
    out_ << "# " << key << '=' << value << '\n';
  }
  out_ << kLogColumns << '\n';
  header_written_ = true;
  check_stream();
}

void CsvLogWriter::write_row(const LogRow& row) {
  if (!header_written_) throw std::logic_error("run log: row before header");
  if (truncated_) throw std::logic_error("run log: row after truncation marker");
  if (row.oracle_units <= last_units_) {
    throw std::logic_error("run log: oracle_units must increase strictly (" +
                           std::to_string(row.oracle_units) + " after " +
                           std::to_string(last_units_) + ")");
  }
  out_ << csv_field(row.method) << ',' << csv_field(row.schedule) << ','
       << std::to_string(row.seed) << ',' << std::to_string(row.epoch) << ','
       << std::to_string(row.oracle_units) << ',' << format_double(row.wall_ms) << ','
       << format_double(row.gap_last) << ',' << format_double(row.gap_ergodic) << '\n';
  last_units_ = row.oracle_units;
  ++rows_;
  check_stream();
}

void CsvLogWriter::mark_truncated(const std::string& reason) {
  if (!header_written_) write_header();
  if (truncated_) return;
  std::string flat = reason;
  for (char& c : flat) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  out_ << kTruncatedPrefix << ' ' << flat << '\n';
  truncated_ = true;
  out_.flush();
  check_stream();
}

void CsvLogWriter::flush() {
  out_.flush();
  check_stream();
}

std::string RunLogFile::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return {};
}

RunLogFile read_run_log(std::istream& in) {
  RunLogFile file;
  bool have_columns = false;
  std::string raw;
  std::size_t line_no = 0;
  auto error = [&](const std::string& msg) {
    return std::runtime_error("run log line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string_view line = raw;
    if (line.empty()) continue;
    if (line.starts_with(kTruncatedPrefix)) {
      file.truncated = true;
      file.truncation_reason = std::string(trim(line.substr(kTruncatedPrefix.size())));
      continue;
    }
    if (line.front() == '#') {
      if (have_columns) throw error("metadata after the column line");
      const std::string_view body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) throw error("metadata line without '='");
      file.metadata.emplace_back(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
      continue;
    }
    if (!have_columns) {
      if (line != kLogColumns) {
        throw error("unexpected columns '" + raw + "', expected '" + std::string(kLogColumns) + "'");
      }
      have_columns = true;
      continue;
    }
    if (file.truncated) throw error("row after truncation marker");
    const auto f = parse_record(line, line_no);
    if (f.size() != 8) throw error("expected 8 fields, got " + std::to_string(f.size()));
    try {
      LogRow r;
      r.method = f[0];
      r.schedule = f[1];
      r.seed = parse_uint(f[2], "seed");
      r.epoch = parse_int(f[3], "epoch");
      r.oracle_units = parse_int(f[4], "oracle_units");
      r.wall_ms = parse_double(f[5], "wall_ms");
      r.gap_last = parse_double(f[6], "gap_last");
      r.gap_ergodic = parse_double(f[7], "gap_ergodic");
      file.rows.push_back(std::move(r));
    } catch (const std::invalid_argument& e) {
      throw error(e.what());
    }
  }
  if (!have_columns) throw std::runtime_error("run log: missing column line");
  return file;
}

RunLogFile load_run_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open run log '" + path + "'");
  return read_run_log(in);
}

}  // namespace svrapd
