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

// Finite fields GF(p^k) for small p^k.
//
// An element is stored as a code in [0, q): the coefficients c_0..c_{k-1} of
// its representative polynomial in the generator u, packed as sum c_i p^i.
// Arithmetic goes through the owning FieldSpec, which keeps lookup tables.
// FieldElement is the checked value type used at API boundaries; the matrix
// and census kernels work on raw codes.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "involkit/errors.hpp"

namespace involkit {

using Code = std::uint32_t;

class FieldSpec;
using Field = std::shared_ptr<const FieldSpec>;

/// Largest field the library accepts.
inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 20;

class FieldSpec {
 public:
  /// Builds GF(p^k). Without a modulus, the lexicographically smallest monic
  /// irreducible of degree k is used (coefficients compared from the constant
  /// term upwards). For k = 1 the modulus is u.
  static Field make(int p, int k, std::optional<std::vector<int>> modulus = std::nullopt);

  int characteristic() const { return p_; }
  int degree() const { return k_; }
  Code size() const { return q_; }
  bool is_char_two() const { return p_ == 2; }

  /// Monic modulus coefficients c_0..c_k.
  const std::vector<int>& modulus() const { return modulus_; }
  bool has_default_modulus() const { return default_modulus_; }

  Code zero() const { return 0; }
  Code one() const { return 1; }

  Code add(Code a, Code b) const {
    return add_table_.empty() ? add_slow(a, b) : add_table_[a * q_ + b];
  }
  Code neg(Code a) const { return neg_table_[a]; }
  Code sub(Code a, Code b) const { return add(a, neg_table_[b]); }
  Code mul(Code a, Code b) const {
    if (!mul_table_.empty()) return mul_table_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  /// Throws ContractError on zero.
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, std::int64_t e) const;
  Code from_integer(std::int64_t v) const;

  std::vector<int> coeffs(Code a) const;
  Code from_coeffs(const std::vector<int>& c) const;

  /// All elements, ordered lexicographically on (c_0, c_1, ..., c_{k-1}).
  const std::vector<Code>& elements() const { return lex_order_; }
  /// Position of an element in elements().
  Code lex_rank(Code a) const { return lex_rank_[a]; }

  /// `GF(p)`, `GF(p^k)`, with `;mod=[...]` appended for a non-default modulus.
  std::string header() const;
  /// Decimal residue for k = 1, ascending coefficient list `[c0,...]` otherwise.
  std::string element_text(Code a) const;
  Code parse_element(std::string_view text) const;

  bool same_as(const FieldSpec& other) const {
    return this == &other || (p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_);
  }

 private:
  FieldSpec(int p, int k, std::vector<int> modulus, bool is_default);
  Code add_slow(Code a, Code b) const;

  int p_;
  int k_;
  Code q_;
  std::vector<int> modulus_;
  bool default_modulus_;
  std::vector<Code> add_table_;
  std::vector<Code> mul_table_;
  std::vector<Code> neg_table_;
  std::vector<Code> exp_;
  std::vector<Code> log_;
  std::vector<Code> lex_order_;
  std::vector<Code> lex_rank_;
};

bool same_field(const Field& a, const Field& b);
/// Throws ContractError when the two fields differ.
void require_same_field(const Field& a, const Field& b, const char* where);

/// Parses a field header: `GF(7)`, `GF(2^2)`, `GF(4)`, `GF(3^2;mod=[1,0,1])`.
Field parse_field(std::string_view text);

bool is_prime(std::int64_t n);

class FieldElement {
 public:
  FieldElement(Field field, Code code);

  static FieldElement zero(const Field& f) { return {f, 0}; }
  static FieldElement one(const Field& f) { return {f, 1}; }
  static FieldElement from_integer(const Field& f, std::int64_t v) { return {f, f->from_integer(v)}; }

  const Field& field() const { return field_; }
  Code code() const { return code_; }
  std::vector<int> coeffs() const { return field_->coeffs(code_); }

  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {field_, field_->neg(code_)}; }
  FieldElement inv() const { return {field_, field_->inv(code_)}; }
  FieldElement pow(std::int64_t e) const { return {field_, field_->pow(code_, e)}; }

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string to_string() const { return field_->element_text(code_); }

 private:
  Field field_;
  Code code_;
};

/// All p^k elements in lexicographic coefficient order.
std::vector<FieldElement> enumerate_all(const Field& f);

inline int char_of(const Field& f) { return f->characteristic(); }
inline bool is_char_two(const Field& f) { return f->is_char_two(); }
inline std::uint64_t field_size(const Field& f) { return f->size(); }

}  // namespace involkit
