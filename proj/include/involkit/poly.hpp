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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "involkit/field.hpp"

namespace involkit {

/// Univariate polynomial over a finite field, ascending coefficients with
/// trailing zeros stripped. The zero polynomial has no coefficients and
/// degree -1.
class Polynomial {
 public:
  Polynomial(Field field, std::vector<Code> coeffs);

  static Polynomial zero(const Field& f) { return {f, {}}; }
  static Polynomial constant(const Field& f, Code c) { return {f, {c}}; }
  static Polynomial one(const Field& f) { return {f, {1}}; }
  /// x - c
  static Polynomial linear(const Field& f, Code root) { return {f, {f->neg(root), 1}}; }
  static Polynomial monomial(const Field& f, int degree, Code c = 1);
  /// Integer coefficients reduced mod p (prime fields and constant embeddings).
  static Polynomial from_ints(const Field& f, const std::vector<std::int64_t>& c);

  const Field& field() const { return field_; }
  const std::vector<Code>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of x^i (zero past the degree).
  Code coeff(int i) const { return i >= 0 && i <= degree() ? coeffs_[i] : 0; }
  Code leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
  Polynomial make_monic() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(Code c) const;
  Polynomial pow(int e) const;

  /// Quotient and remainder; throws ContractError for a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  Polynomial operator/(const Polynomial& o) const { return divmod(o).first; }
  Polynomial operator%(const Polynomial& o) const { return divmod(o).second; }
  bool divides(const Polynomial& o) const { return o.divmod(*this).second.is_zero(); }

  Code eval(Code x) const;
  Polynomial derivative() const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }
  /// Canonical order: by degree, then coefficients from the constant term up
  /// (each compared by lexicographic element rank).
  bool operator<(const Polynomial& o) const;

  /// `poly[c0,c1,...]`
  std::string to_text() const;
  /// `x^2+3x+2`
  std::string pretty() const;

 private:
  void strip();

  Field field_;
  std::vector<Code> coeffs_;
};

/// Monic gcd (zero if both inputs are zero).
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial lcm(const Polynomial& a, const Polynomial& b);

/// Parses `poly[c0,c1,...]` over the given field.
Polynomial parse_polynomial(const Field& f, std::string_view text);

/// a_0^{-1} x^n f(1/x) for monic f with f(0) != 0.
Polynomial reciprocal(const Polynomial& f);
/// Coefficient test: a_0^2 = 1 and a_{n-k} = a_0^{-1} a_k.
bool is_self_reciprocal(const Polynomial& f);

struct Factorization {
  std::vector<std::pair<Polynomial, int>> factors;  // sorted, monic irreducible
  Code unit = 1;
  Polynomial expand(const Field& f) const;
};

/// Complete factorization by trial division against monic irreducibles of
/// degree <= deg/2. Throws ContractError on the zero polynomial.
Factorization factor(const Polynomial& f);
bool is_irreducible(const Polynomial& f);

/// All monic irreducibles of the given degree, in canonical order.
const std::vector<Polynomial>& monic_irreducibles(const Field& f, int degree);

/// f monic with f(0) != 0 is g^k for one self-reciprocal irreducible g.
bool power_of_self_reciprocal_irreducible(const Polynomial& f);

}  // namespace involkit
