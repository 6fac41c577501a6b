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

#include "involkit/report.hpp"

#include <cstdio>

#include "involkit/errors.hpp"

namespace involkit {

namespace {

bool needs_quotes(std::string_view v) {
  if (v.empty()) return true;
  for (char c : v)
    if (c == ' ' || c == '\t' || c == '"' || c == '=' || c == '\\' || c == '\n') return true;
  return false;
}

std::string quote(std::string_view v) {
  if (!needs_quotes(v)) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", ms);
  return buf;
}

}  // namespace

Record& Record::add(std::string key, std::string value) {
  fields.emplace_back(std::move(key), std::move(value));
  return *this;
}

std::optional<std::string> Record::get(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  return std::nullopt;
}

std::string Record::to_line() const {
  std::string line = kind;
  for (const auto& [k, v] : fields) line += " " + k + "=" + quote(v);
  return line;
}

Record parse_record(std::string_view line) {
  Record r;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < line.size() && line[pos] == ' ') ++pos;
  };
  skip();
  while (pos < line.size() && line[pos] != ' ') r.kind += line[pos++];
  if (r.kind.empty()) throw ParseError("record: missing kind");
  while (true) {
    skip();
    if (pos >= line.size()) break;
    std::string key;
    while (pos < line.size() && line[pos] != '=' && line[pos] != ' ') key += line[pos++];
    if (key.empty() || pos >= line.size() || line[pos] != '=') throw ParseError("record: expected key=value");
    ++pos;
    std::string value;
    if (pos < line.size() && line[pos] == '"') {
      ++pos;
      bool closed = false;
      while (pos < line.size()) {
        char c = line[pos++];
        if (c == '"') {
          closed = true;
          break;
        }
        if (c == '\\' && pos < line.size()) {
          c = line[pos++];
          if (c == 'n') c = '\n';
        }
        value += c;
      }
      if (!closed) throw ParseError("record: unterminated quote");
    } else {
      while (pos < line.size() && line[pos] != ' ') value += line[pos++];
    }
    r.add(std::move(key), std::move(value));
  }
  return r;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_applicable: return "n/a";
  }
  return "?";
}

void Report::input(std::string key, std::string value) { inputs_.emplace_back(std::move(key), std::move(value)); }

Record& Report::result(std::string kind) {
  results_.push_back(Record{std::move(kind), {}});
  return results_.back();
}

bool Report::ok() const {
  for (const auto& c : checks_)
    if (c.failed()) return false;
  return true;
}

std::vector<Record> Report::records(bool timing) const {
  std::vector<Record> out;
  out.push_back(Record{"report", {{"command", command_}}});
  if (!inputs_.empty()) out.push_back(Record{"input", inputs_});
  for (const auto& r : results_) out.push_back(r);
  std::size_t failed = 0;
  for (const auto& c : checks_) {
    Record r{"check", {}};
    r.add("claim", c.claim).add("status", to_string(c.status)).add("evidence", c.evidence);
    if (c.counterexample) r.add("counterexample", *c.counterexample);
    if (timing) r.add("elapsed_ms", format_ms(c.elapsed_ms));
    out.push_back(std::move(r));
    if (c.failed()) ++failed;
  }
  Record summary{"summary", {}};
  summary.add("checks", std::to_string(checks_.size())).add("failed", std::to_string(failed));
  summary.add("status", failed ? "fail" : "pass");
  if (timing) summary.add("elapsed_ms", format_ms(elapsed_ms_));
  out.push_back(std::move(summary));
  return out;
}

std::string Report::to_text(bool timing) const {
  std::string s;
  for (const auto& r : records(timing)) s += r.to_line() + "\n";
  return s;
}

}  // namespace involkit
