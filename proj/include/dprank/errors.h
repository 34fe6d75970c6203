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

#ifndef DPRANK_ERRORS_H_
#define DPRANK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dprank {

// Invalid argument or precondition violation (bad n, p, k, epsilon, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested quantity is not uniquely defined for this instance, e.g. a
// tie at the top-k boundary.
class IllPosedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. `line` is 1-based and counts the header row.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Input violates the comparison model it was ingested under, e.g. a repeated
// pair in edge mode.
class AdjacencyModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dprank

#endif  // DPRANK_ERRORS_H_
