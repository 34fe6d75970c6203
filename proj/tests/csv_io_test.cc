// Copyright 2026 The dprank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dprank/csv_io.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "dprank/errors.h"
#include "dprank/noisy_counts.h"
#include "gtest/gtest.h"

namespace dprank {
namespace {

std::vector<RawComparisonRow> Rows(const std::string& text) {
  std::istringstream in(text);
  return ReadComparisonRows(in);
}

int ParseErrorLine(const std::string& text) {
  try {
    Rows(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(CsvLineTest, SplitsAndUnquotes) {
  EXPECT_EQ(SplitCsvLine("a,b,,c", 1),
            (std::vector<std::string>{"a", "b", "", "c"}));
  EXPECT_EQ(SplitCsvLine("\"x,y\",\"say \"\"hi\"\"\"", 1),
            (std::vector<std::string>{"x,y", "say \"hi\""}));
  try {
    SplitCsvLine("\"open", 7);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7);
  }
}

TEST(CsvLineTest, QuotesOnlyWhenNeeded) {
  EXPECT_EQ(CsvField("plain name"), "plain name");
  EXPECT_EQ(CsvField("a,b"), "\"a,b\"");
  EXPECT_EQ(CsvField("q\""), "\"q\"\"\"");
  for (const std::string s : {"a,b", "q\"x", "plain"}) {
    EXPECT_EQ(SplitCsvLine(CsvField(s) + ",z", 1)[0], s);
  }
}

TEST(NumberFormatTest, RoundTripsAndInf) {
  for (double v : {0.1, 1.0 / 3, -2.5e-300, 12345678.9, 0.0}) {
    EXPECT_EQ(ParseDouble(FormatDouble(v)), v);
  }
  EXPECT_EQ(FormatDouble(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_TRUE(std::isinf(ParseDouble("inf")));
  EXPECT_EQ(FormatDouble(0.5), "0.5");
  EXPECT_THROW(ParseDouble("abc"), ParameterError);
  EXPECT_THROW(ParseDouble("1.5x"), ParameterError);
}

TEST(ReadComparisonRowsTest, Validates) {
  EXPECT_EQ(Rows("user_id,item_a,item_b,winner\nu1,A,B,A\n").size(), 1u);
  EXPECT_EQ(ParseErrorLine("wrong,header\n"), 1);
  EXPECT_EQ(ParseErrorLine("user_id,item_a,item_b,winner\nu1,A,B,A\nu1,A,A,A\n"), 3);
  EXPECT_EQ(ParseErrorLine("user_id,item_a,item_b,winner\nu1,A,B,C\n"), 2);
  EXPECT_EQ(ParseErrorLine("user_id,item_a,item_b,winner\nu1,A,B\n"), 2);
  EXPECT_EQ(ParseErrorLine(""), 1);
}

TEST(IngestIndividualTest, GroupsUsersAndItemsByFirstAppearance) {
  const IndividualIngest in = IngestIndividual(
      Rows("user_id,item_a,item_b,winner\n"
           "u2,Y,X,X\nu1,Z,X,Z\nu2,Z,Y,Y\nu1,X,Y,Y\n"),
      LPolicy::kStrict);
  const IndividualDataset& d = in.data;
  EXPECT_EQ(d.item_names, (std::vector<std::string>{"Y", "X", "Z"}));
  EXPECT_EQ(d.user_ids, (std::vector<std::string>{"u2", "u1"}));
  EXPECT_EQ(d.n, 3);
  EXPECT_EQ(d.L, 2);
  EXPECT_EQ(d.users[0][0], (ComparisonRecord{0, 1, 1}));
  EXPECT_EQ(d.users[1][0], (ComparisonRecord{1, 2, 2}));
}

TEST(IngestIndividualTest, StrictNamesOffendingUser) {
  const auto rows = Rows(
      "user_id,item_a,item_b,winner\n"
      "a,X,Y,X\na,X,Z,Z\nb,X,Y,Y\nb,Y,Z,Y\nshort,X,Y,X\n");
  try {
    IngestIndividual(rows, LPolicy::kStrict);
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("short"), std::string::npos);
  }
  const IndividualIngest skip = IngestIndividual(rows, LPolicy::kPadSkip);
  EXPECT_EQ(skip.data.m(), 2);
  EXPECT_EQ(skip.data.L, 2);
  EXPECT_EQ(skip.dropped_users, (std::vector<std::string>{"short"}));
  EXPECT_EQ(ParseLPolicy("pad-skip"), LPolicy::kPadSkip);
  EXPECT_THROW(ParseLPolicy("pad"), ParameterError);
}

TEST(IngestEdgeTest, OnePerPair) {
  const EdgeIngest in =
      IngestEdge(Rows("user_id,item_a,item_b,winner\n,B,A,A\n,A,C,C\n"));
  EXPECT_EQ(in.item_names, (std::vector<std::string>{"B", "A", "C"}));
  EXPECT_EQ(in.data.size(), 2u);
  EXPECT_EQ(CountWins(in.data).wins, (std::vector<int64_t>{0, 1, 1}));
  EXPECT_NEAR(in.data.graph.p, 2.0 / 3, 1e-15);
  EXPECT_THROW(IngestEdge(Rows("user_id,item_a,item_b,winner\n"
                               "u,A,B,A\nu,B,A,A\n")),
               AdjacencyModelError);
}

TEST(RoundTripTest, WriteThenIngestReproducesDataset) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const IndividualDataset d =
        SampleIndividual(7, 25, 4, RhoFromTheta(GenerateTheta(7, 2, seed),
                                                LogisticLink()),
                         seed);
    std::stringstream first;
    WriteIndividualCsv(d, first);
    const IndividualDataset once =
        IngestIndividual(ReadComparisonRows(first), LPolicy::kStrict).data;
    std::stringstream second;
    WriteIndividualCsv(once, second);
    const IndividualDataset twice =
        IngestIndividual(ReadComparisonRows(second), LPolicy::kStrict).data;
    EXPECT_EQ(once.users, twice.users);
    EXPECT_EQ(once.item_names, twice.item_names);
    EXPECT_EQ(once.user_ids, twice.user_ids);
    EXPECT_EQ(once.L, d.L);
    EXPECT_EQ(once.m(), d.m());
  }
}

TEST(RoundTripTest, ExhaustiveSurveyShape) {
  const IndividualDataset d =
      SampleIndividualExhaustive(6, 303, ProbMatrix(6), 1);
  std::stringstream s;
  WriteIndividualCsv(d, s);
  const IndividualDataset in =
      IngestIndividual(ReadComparisonRows(s), LPolicy::kStrict).data;
  EXPECT_EQ(in.n, 6);
  EXPECT_EQ(in.m(), 303);
  EXPECT_EQ(in.L, 15);
}

}  // namespace
}  // namespace dprank
