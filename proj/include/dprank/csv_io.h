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

#ifndef DPRANK_CSV_IO_H_
#define DPRANK_CSV_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "dprank/data_model.h"

namespace dprank {

// Splits one CSV line (comma separator, double-quote quoting, "" escapes).
// Throws ParseError carrying `line_number` on an unterminated quote.
std::vector<std::string> SplitCsvLine(const std::string& line, int line_number);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string CsvField(const std::string& value);

// Shortest decimal that round-trips; "inf" / "-inf" for infinities.
std::string FormatDouble(double value);

// Parses a number or "inf". Throws ParameterError on anything else.
double ParseDouble(const std::string& text);

// Comparison rows: user_id,item_a,item_b,winner
struct RawComparisonRow {
  std::string user_id;
  std::string item_a;
  std::string item_b;
  std::string winner;
};

inline constexpr const char* kComparisonHeader = "user_id,item_a,item_b,winner";

// Reads and validates rows. Winner must be one of the two items and the items
// must differ; violations throw ParseError with the offending line number.
std::vector<RawComparisonRow> ReadComparisonRows(std::istream& in);

enum class LPolicy { kStrict, kPadSkip };

LPolicy ParseLPolicy(const std::string& name);

struct IndividualIngest {
  IndividualDataset data;
  // Users dropped under pad-skip because their record count differed from
  // the modal L.
  std::vector<std::string> dropped_users;
};

struct EdgeIngest {
  EdgeDataset data;
  std::vector<std::string> item_names;
};

// Items get indices in order of first appearance; users are grouped by id in
// order of first appearance. Under kStrict every user must have the same
// number of rows (the modal count), otherwise ParameterError names the user.
IndividualIngest IngestIndividual(const std::vector<RawComparisonRow>& rows,
                                  LPolicy policy);
IndividualIngest IngestIndividualFile(const std::string& path, LPolicy policy);

// One comparison per unordered pair; a repeated pair throws
// AdjacencyModelError (such data belongs in individual mode). user_id is
// ignored.
EdgeIngest IngestEdge(const std::vector<RawComparisonRow>& rows);
EdgeIngest IngestEdgeFile(const std::string& path);

// Writes records in dataset order, lower-index item first. Missing names
// become "item<k>" / "user<k>" (1-based). Re-ingesting the output of an
// ingested dataset reproduces it exactly.
void WriteIndividualCsv(const IndividualDataset& data, std::ostream& out);

}  // namespace dprank

#endif  // DPRANK_CSV_IO_H_
