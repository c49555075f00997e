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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <locale>
#include <sstream>
#include <stdexcept>
#include <string>

#include "svrapd/config.h"
#include "svrapd/libsvm.h"
#include "svrapd/rng.h"
#include "svrapd/run_log.h"
#include "svrapd/text.h"

namespace svrapd {
namespace {

SparseDataset parse(const std::string& text) {
  std::istringstream in(text);
  return parse_libsvm(in);
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

TEST(LibsvmTest, ParsesExample) {
  const SparseDataset d = parse("+1 1:0.5 3:2\n-1 2:1\n\n+1 3:-4e-1\n");
  ASSERT_EQ(d.n_samples(), 3u);
  EXPECT_EQ(d.n_features, 3u);
  EXPECT_EQ(d.nonzeros(), 4u);
  EXPECT_EQ(d.labels, (std::vector<double>{1, -1, 1}));
  EXPECT_EQ(d.rows[0], (std::vector<SparseDataset::Entry>{{0, 0.5}, {2, 2.0}}));
  EXPECT_EQ(d.rows[2][0].second, -0.4);
  const std::vector<double> dense = to_dense(d);
  EXPECT_EQ(dense, (std::vector<double>{0.5, 0, 2, 0, 1, 0, 0, 0, -0.4}));
}

TEST(LibsvmTest, TabsAndEmptyRows) {
  const SparseDataset d = parse("1\t2:3\n-1\n");
  EXPECT_EQ(d.n_features, 2u);
  EXPECT_TRUE(d.rows[1].empty());
}

TEST(LibsvmTest, LabelNormalization) {
  EXPECT_EQ(parse("0 1:1\n1 1:2\n").labels, (std::vector<double>{-1, 1}));
  EXPECT_EQ(parse("2 1:1\n1 1:2\n2 1:0\n").labels, (std::vector<double>{1, -1, 1}));
  EXPECT_EQ(parse("-1 1:1\n1 1:2\n").labels, (std::vector<double>{-1, 1}));
  EXPECT_THROW(parse("1 1:1\n2 1:1\n3 1:1\n"), std::runtime_error);
}

TEST(LibsvmTest, ErrorsNameTheLine) {
  EXPECT_NE(error_of([] { parse("1 1:1\nabc 1:1\n"); }).find("line 2"), std::string::npos);
  EXPECT_NE(error_of([] { parse("1 1:1\n1 2:1\n1 0:1\n"); }).find("line 3"), std::string::npos);
  EXPECT_NE(error_of([] { parse("1 3:1 2:1\n"); }).find("increasing"), std::string::npos);
  EXPECT_NE(error_of([] { parse("1 3\n"); }).find("index:value"), std::string::npos);
  EXPECT_NE(error_of([] { parse("1 1:x\n"); }).find("line 1"), std::string::npos);
  EXPECT_NE(error_of([] { parse("1 1:inf\n"); }).find("non-finite"), std::string::npos);
}

TEST(LibsvmTest, FeatureCountOverride) {
  std::istringstream a("1 2:1\n");
  EXPECT_EQ(parse_libsvm(a, 5).n_features, 5u);
  std::istringstream b("1 7:1\n");
  EXPECT_THROW(parse_libsvm(b, 5), std::runtime_error);
  EXPECT_THROW(load_libsvm("/nonexistent/file.svm"), std::runtime_error);
}

TEST(LibsvmTest, WriteParseRoundTrip) {
  SplitMix64 rng(3);
  SparseDataset d;
  d.n_features = 9;
  for (int i = 0; i < 50; ++i) {
    std::vector<SparseDataset::Entry> row;
    for (std::uint32_t j = 0; j < 9; ++j) {
      if (rng.uniform() < 0.4) row.emplace_back(j, rng.normal() / 3.0);
    }
    d.rows.push_back(row);
    d.labels.push_back(rng.uniform() < 0.5 ? -1.0 : 1.0);
  }
  d.rows[0] = {{8, 1.0}};  // keeps the feature count observable
  std::stringstream s;
  write_libsvm(s, d);
  EXPECT_EQ(parse_libsvm(s), d);
}

TEST(LibsvmTest, SubsampleAndScale) {
  const SparseDataset d = parse("1 1:1\n-1 1:2\n1 1:3\n-1 1:4\n1 1:-8 2:0.5\n");
  const SparseDataset s = subsample(d, 3, 7);
  ASSERT_EQ(s.n_samples(), 3u);
  double last = -1e9;
  for (const auto& r : s.rows) {
    // Original order is kept; values 1..4 increase and -8 sits last.
    if (r[0].second > 0) {
      EXPECT_GT(r[0].second, last);
      last = r[0].second;
    }
  }
  EXPECT_EQ(subsample(d, 3, 7), s);
  EXPECT_EQ(subsample(d, 10, 7), d);

  const SparseDataset sc = scale_features(d);
  EXPECT_EQ(sc.rows[0][0].second, 1.0 / 8.0);
  EXPECT_EQ(sc.rows[4][0].second, -1.0);
  EXPECT_EQ(sc.rows[4][1].second, 1.0);
}

TEST(NumberTextTest, RoundTripsBitExactly) {
  SplitMix64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    const double v = std::ldexp(rng.normal(), static_cast<int>(rng.below(600)) - 300);
    ASSERT_EQ(parse_double(format_double(v)), v);
  }
  for (double v : {0.0, 1.0, -2.5, std::numeric_limits<double>::denorm_min(),
                   std::numeric_limits<double>::max(), 0.1}) {
    EXPECT_EQ(parse_double(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_THROW(parse_double("1.5x"), std::invalid_argument);
  EXPECT_THROW(parse_int("12.0"), std::invalid_argument);
  EXPECT_EQ(parse_hex64(format_hex64(0xdeadbeefULL)), 0xdeadbeefULL);
}

LogRow row(std::int64_t epoch, std::int64_t units, double gap) {
  return LogRow{"svr-apd-const", "constant", 1234567, epoch, units, 1.5, gap, gap / 2};
}

TEST(CsvLogTest, HeaderAndRows) {
  std::ostringstream out;
  CsvLogWriter w(out);
  w.write_header();
  w.write_row(row(1, 100, 0.25));
  w.write_row(row(2, 200, 0.0));
  w.write_row(row(3, 300, 1e-7));
  const std::string text = out.str();
  std::istringstream lines(text);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    ++count;
    EXPECT_NE(line.back(), ',');
  }
  EXPECT_EQ(count, 4);
  EXPECT_EQ(text.substr(0, text.find('\n')), std::string(kLogColumns));
  EXPECT_NE(text.find("svr-apd-const,constant,1234567,2,200,1.5,0,0\n"), std::string::npos);
  EXPECT_EQ(w.rows_written(), 3);
}

TEST(CsvLogTest, RoundTripWithMetadataAndTruncation) {
  std::stringstream s;
  CsvLogWriter w(s);
  w.write_header({{"method", "smd"}, {"tuned.step_constant", "0.1"}});
  const LogRow a{"smd", "none", 3, 10, 20, 0.123456789012345678, 1.0 / 3.0, 2.0 / 3.0};
  w.write_row(a);
  w.mark_truncated("budget\nexhausted");
  const RunLogFile f = read_run_log(s);
  ASSERT_EQ(f.rows.size(), 1u);
  EXPECT_EQ(f.rows[0], a);
  EXPECT_EQ(f.meta("tuned.step_constant"), "0.1");
  EXPECT_EQ(f.meta("absent"), "");
  EXPECT_TRUE(f.truncated);
  EXPECT_EQ(f.truncation_reason, "budget exhausted");
  EXPECT_THROW(w.write_row(row(11, 30, 0.1)), std::logic_error);
}

TEST(CsvLogTest, UnitsMustIncrease) {
  std::ostringstream out;
  CsvLogWriter w(out);
  EXPECT_THROW(w.write_row(row(1, 1, 0.0)), std::logic_error);
  w.write_header();
  EXPECT_THROW(w.write_header(), std::logic_error);
  w.write_row(row(1, 10, 0.0));
  EXPECT_THROW(w.write_row(row(2, 10, 0.0)), std::logic_error);
  EXPECT_THROW(w.write_row(row(2, 9, 0.0)), std::logic_error);
}

TEST(CsvLogTest, QuotesFieldsWithSeparators) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  std::stringstream s;
  CsvLogWriter w(s);
  w.write_header();
  LogRow r = row(1, 5, 0.5);
  r.method = "odd,name";
  w.write_row(r);
  EXPECT_EQ(read_run_log(s).rows.at(0).method, "odd,name");
}

TEST(CsvLogTest, ReaderRejectsSchemaMismatch) {
  std::istringstream wrong("a,b,c\n");
  EXPECT_THROW(read_run_log(wrong), std::runtime_error);
  std::istringstream short_row(std::string(kLogColumns) + "\nsmd,none,1,1,2\n");
  const std::string msg = error_of([&] { read_run_log(short_row); });
  EXPECT_NE(msg.find("line 2"), std::string::npos);
  std::istringstream none("");
  EXPECT_THROW(read_run_log(none), std::runtime_error);
}

// A numpunct facet with a decimal comma and digit grouping.
struct CommaPunct : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\3"; }
};

TEST(CsvLogTest, IndependentOfStreamLocale) {
  std::ostringstream out;
  out.imbue(std::locale(std::locale::classic(), new CommaPunct));
  CsvLogWriter w(out);
  w.write_header();
  w.write_row(row(1234, 5678901, 0.5));
  EXPECT_NE(out.str().find("svr-apd-const,constant,1234567,1234,5678901,1.5,0.5,0.25"),
            std::string::npos)
      << out.str();
}

TEST(ConfigTest, EmptyFileGivesDefaults) {
  std::istringstream in("# nothing here\n\n");
  const RunConfig c = parse_config(in);
  const RunConfig d;
  EXPECT_EQ(to_config_text(c), to_config_text(d));
  EXPECT_EQ(c.rho, 50.0);
  EXPECT_EQ(c.lambda_max, 100.0);
  EXPECT_EQ(c.box, 10.0);
  EXPECT_FALSE(c.gamma_bar_x.has_value());
}

TEST(ConfigTest, ExplicitDefaultHashesLikeDefault) {
  std::istringstream in("[problem]\nrho = 50\n");
  EXPECT_EQ(config_hash(parse_config(in)), config_hash(RunConfig{}));
  std::istringstream other("rho = 40\n");
  EXPECT_NE(config_hash(parse_config(other)), config_hash(RunConfig{}));
  RunConfig moved;
  moved.out = "elsewhere.csv";
  EXPECT_EQ(config_hash(moved), config_hash(RunConfig{}));
}

TEST(ConfigTest, ParsesValuesAndLists) {
  std::istringstream in(
      "method = smp ; trailing comment\nT = 2.5\ngamma_bar_x = 0.3\nL_xx = auto\n"
      "step_grid = 0.5, 2\ncache_snapshot = yes\nseed = 9\n");
  const RunConfig c = parse_config(in);
  EXPECT_EQ(c.method, "smp");
  EXPECT_EQ(c.T, 2.5);
  EXPECT_EQ(c.gamma_bar_x, 0.3);
  EXPECT_FALSE(c.L_xx.has_value());
  EXPECT_EQ(c.step_grid, (std::vector<double>{0.5, 2.0}));
  EXPECT_TRUE(c.cache_snapshot);
  EXPECT_EQ(c.seed, 9u);
}

TEST(ConfigTest, ErrorsNameKeyAndLine) {
  std::istringstream dup("rho = 1\n\nrho = 2\n");
  const std::string d = error_of([&] { parse_config(dup, "x.ini"); });
  EXPECT_NE(d.find("'rho'"), std::string::npos) << d;
  EXPECT_NE(d.find("x.ini:3"), std::string::npos) << d;
  std::istringstream unknown("rhoo = 1\n");
  EXPECT_NE(error_of([&] { parse_config(unknown); }).find("'rhoo'"), std::string::npos);
  std::istringstream bad("epochs = many\n");
  EXPECT_NE(error_of([&] { parse_config(bad); }).find("epochs"), std::string::npos);
  std::istringstream no_eq("epochs 5\n");
  EXPECT_THROW(parse_config(no_eq), std::invalid_argument);
}

TEST(ConfigTest, Validation) {
  RunConfig c;
  EXPECT_NO_THROW(validate_config(c));
  c.method = "sgd";
  EXPECT_THROW(validate_config(c), std::invalid_argument);
  c = RunConfig{};
  c.dataset = "/nonexistent/data.svm";
  EXPECT_THROW(validate_config(c), std::invalid_argument);
  c = RunConfig{};
  EXPECT_THROW(set_config_value(c, "nope", "1"), std::invalid_argument);
  set_config_value(c, "budget", "1000");
  EXPECT_EQ(c.budget, 1000);
}

TEST(ConfigTest, EchoRoundTrips) {
  RunConfig c;
  c.gamma_bar_x = 0.25;
  c.step_grid = {0.1, 0.2};
  c.tau_scale = 1.0 / 3.0;
  std::istringstream in(to_config_text(c));
  const RunConfig back = parse_config(in);
  EXPECT_EQ(to_config_text(back), to_config_text(c));
  EXPECT_EQ(config_hash(back), config_hash(c));
}

}  // namespace
}  // namespace svrapd
