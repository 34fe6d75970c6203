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

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>

#include "dprank/errors.h"

namespace dprank {
namespace {

// Name -> index by first appearance.
class NameIndex {
 public:
  int Get(const std::string& name) {
    auto [it, inserted] = index_.emplace(name, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }
  std::vector<std::string>& names() { return names_; }

 private:
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> names_;
};

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  return in;
}

}  // namespace

std::vector<std::string> SplitCsvLine(const std::string& line,
                                      int line_number) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          fields.back() += '"';
          ++k;
        } else {
          quoted = false;
        }
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw ParseError("unterminated quoted field", line_number);
  return fields;
}

std::string CsvField(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string FormatDouble(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double ParseDouble(const std::string& text) {
  if (text == "inf" || text == "Infinity" || text == "INF") {
    return std::numeric_limits<double>::infinity();
  }
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || text.empty()) {
    throw ParameterError("not a number: '" + text + "'");
  }
  return v;
}

std::vector<RawComparisonRow> ReadComparisonRows(std::istream& in) {
  std::vector<RawComparisonRow> rows;
  std::string line;
  int line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = SplitCsvLine(line, line_number);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 4 || fields[0] != "user_id" || fields[1] != "item_a" ||
          fields[2] != "item_b" || fields[3] != "winner") {
        throw ParseError(std::string("expected header ") + kComparisonHeader,
                         line_number);
      }
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError("expected 4 fields, got " + std::to_string(fields.size()),
                       line_number);
    }
    RawComparisonRow row{fields[0], fields[1], fields[2], fields[3]};
    if (row.item_a == row.item_b) {
      throw ParseError("item compared with itself: " + row.item_a, line_number);
    }
    if (row.winner != row.item_a && row.winner != row.item_b) {
      throw ParseError("winner '" + row.winner + "' is not one of the compared items",
                       line_number);
    }
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError("empty file", 1);
  return rows;
}

LPolicy ParseLPolicy(const std::string& name) {
  if (name == "strict") return LPolicy::kStrict;
  if (name == "pad-skip") return LPolicy::kPadSkip;
  throw ParameterError("unknown L policy '" + name + "' (strict|pad-skip)");
}

IndividualIngest IngestIndividual(const std::vector<RawComparisonRow>& rows,
                                  LPolicy policy) {
  NameIndex items;
  NameIndex users;
  std::vector<std::vector<ComparisonRecord>> bundles;
  for (const RawComparisonRow& row : rows) {
    const int a = items.Get(row.item_a);
    const int b = items.Get(row.item_b);
    const int u = users.Get(row.user_id);
    if (u == static_cast<int>(bundles.size())) bundles.emplace_back();
    const int winner = row.winner == row.item_a ? a : b;
    bundles[u].push_back({std::min(a, b), std::max(a, b), winner});
  }

  // Modal bundle size; ties go to the larger size.
  std::map<size_t, int> freq;
  for (const auto& b : bundles) ++freq[b.size()];
  size_t modal = 0;
  int best = 0;
  for (const auto& [size, count] : freq) {
    if (count >= best) {
      best = count;
      modal = size;
    }
  }

  IndividualIngest out;
  out.data.n = static_cast<int>(items.names().size());
  out.data.L = static_cast<int>(modal);
  out.data.item_names = std::move(items.names());
  for (size_t u = 0; u < bundles.size(); ++u) {
    if (bundles[u].size() == modal) {
      out.data.users.push_back(std::move(bundles[u]));
      out.data.user_ids.push_back(users.names()[u]);
      continue;
    }
    if (policy == LPolicy::kStrict) {
      throw ParameterError("user '" + users.names()[u] + "' has " +
                           std::to_string(bundles[u].size()) +
                           " comparisons but L = " + std::to_string(modal) +
                           " (use pad-skip to drop such users)");
    }
    out.dropped_users.push_back(users.names()[u]);
  }
  return out;
}

IndividualIngest IngestIndividualFile(const std::string& path, LPolicy policy) {
  std::ifstream in = OpenOrThrow(path);
  return IngestIndividual(ReadComparisonRows(in), policy);
}

EdgeIngest IngestEdge(const std::vector<RawComparisonRow>& rows) {
  NameIndex items;
  std::map<Edge, uint8_t> outcomes;
  for (const RawComparisonRow& row : rows) {
    const int a = items.Get(row.item_a);
    const int b = items.Get(row.item_b);
    const Edge e{std::min(a, b), std::max(a, b)};
    const int winner = row.winner == row.item_a ? a : b;
    if (!outcomes.emplace(e, winner == e.i ? 1 : 0).second) {
      throw AdjacencyModelError("pair (" + row.item_a + ", " + row.item_b +
                                ") compared more than once; edge mode allows "
                                "one comparison per pair, use individual mode");
    }
  }
  EdgeIngest out;
  const int n = static_cast<int>(items.names().size());
  out.item_names = std::move(items.names());
  out.data.graph.n = n;
  for (const auto& [edge, y] : outcomes) {
    out.data.graph.edges.push_back(edge);
    out.data.outcomes.push_back(y);
  }
  const double pairs = n >= 2 ? n * (n - 1) / 2.0 : 1.0;
  out.data.graph.p = outcomes.empty() ? 1.0 : outcomes.size() / pairs;
  return out;
}

EdgeIngest IngestEdgeFile(const std::string& path) {
  std::ifstream in = OpenOrThrow(path);
  return IngestEdge(ReadComparisonRows(in));
}

void WriteIndividualCsv(const IndividualDataset& data, std::ostream& out) {
  auto item = [&](int i) {
    return i < static_cast<int>(data.item_names.size())
               ? data.item_names[i]
               : "item" + std::to_string(i + 1);
  };
  out << kComparisonHeader << '\n';
  for (int u = 0; u < data.m(); ++u) {
    const std::string uid = u < static_cast<int>(data.user_ids.size())
                                ? data.user_ids[u]
                                : "user" + std::to_string(u + 1);
    for (const ComparisonRecord& r : data.users[u]) {
      out << CsvField(uid) << ',' << CsvField(item(r.i)) << ','
          << CsvField(item(r.j)) << ',' << CsvField(item(r.winner)) << '\n';
    }
  }
}

}  // namespace dprank
