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

// Tiny cursor over the text grammars (field headers, element lists, matrix
// and polynomial literals). Errors surface as ParseError with the offset.

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "involkit/errors.hpp"

namespace involkit::detail {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool consume(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  void expect(std::string_view word) {
    if (!consume(word)) fail("expected '" + std::string(word) + "'");
  }
  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected integer");
    }
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }
  /// Returns the raw text of one balanced element: an integer or a `[...]` list.
  std::string_view balanced_token() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '[') {
      int depth = 0;
      while (pos_ < text_.size()) {
        char c = text_[pos_++];
        if (c == '[') ++depth;
        if (c == ']' && --depth == 0) return text_.substr(start, pos_ - start);
      }
      fail("unbalanced '['");
    }
    integer();
    return text_.substr(start, pos_ - start);
  }
  std::size_t pos() const { return pos_; }
  std::string_view rest() const { return text_.substr(pos_); }
  void require_end() {
    if (!at_end()) fail("trailing input");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace involkit::detail
