/*
   Copyright 2026 The involkit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Line-delimited report records: `<kind> key=value key=value ...`.
// Keys keep insertion order. Values containing spaces, quotes, '=' or
// nothing at all are double-quoted with backslash escapes.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace involkit {

struct Record {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> fields;

  Record& add(std::string key, std::string value);
  /// Value of the first field named `key`.
  std::optional<std::string> get(std::string_view key) const;
  std::string to_line() const;
  bool operator==(const Record& o) const = default;
};

/// Throws ParseError on malformed lines.
Record parse_record(std::string_view line);

enum class CheckStatus { pass, fail, not_applicable };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string claim;
  CheckStatus status = CheckStatus::pass;
  std::string evidence;
  /// Serialized matrix, map or form that broke the claim.
  std::optional<std::string> counterexample;
  double elapsed_ms = 0;

  bool failed() const { return status == CheckStatus::fail; }
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void input(std::string key, std::string value);
  Record& result(std::string kind);
  void check(CheckResult c) { checks_.push_back(std::move(c)); }
  void set_elapsed(double ms) { elapsed_ms_ = ms; }

  const std::string& command() const { return command_; }
  const std::vector<std::pair<std::string, std::string>>& inputs() const { return inputs_; }
  const std::vector<Record>& results() const { return results_; }
  const std::vector<CheckResult>& checks() const { return checks_; }
  bool ok() const;

  /// Without timing the text depends only on the inputs.
  std::vector<Record> records(bool timing = true) const;
  std::string to_text(bool timing = true) const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<Record> results_;
  std::vector<CheckResult> checks_;
  double elapsed_ms_ = 0;
};

}  // namespace involkit
