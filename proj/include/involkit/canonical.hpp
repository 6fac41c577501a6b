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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "involkit/matrix.hpp"
#include "involkit/poly.hpp"

namespace involkit {

/// One elementary divisor base^multiplicity, base monic irreducible.
struct ElementaryDivisor {
  Polynomial base;
  int multiplicity;

  Polynomial value() const { return base.pow(multiplicity); }
  int degree() const { return base.degree() * multiplicity; }
  bool operator==(const ElementaryDivisor& o) const { return multiplicity == o.multiplicity && base == o.base; }
  bool operator<(const ElementaryDivisor& o) const {
    if (base != o.base) return base < o.base;
    return multiplicity < o.multiplicity;
  }
};

struct RationalCanonical;

/// Elementary-divisor form: a sorted multiset of prime powers. Two matrices
/// are similar exactly when their forms compare equal.
class CanonicalForm {
 public:
  CanonicalForm(Field field, std::vector<ElementaryDivisor> divisors);

  const Field& field() const { return field_; }
  const std::vector<ElementaryDivisor>& divisors() const { return divisors_; }
  int dimension() const;
  /// Block-diagonal sum of companion matrices, in divisor order.
  Matrix assemble() const;
  /// Product of the divisors (the characteristic polynomial).
  Polynomial product() const;
  /// lcm of the divisors (the minimal polynomial).
  Polynomial lcm() const;

  bool operator==(const CanonicalForm& o) const;
  bool operator!=(const CanonicalForm& o) const { return !(*this == o); }

  /// `rcf{poly[1,1]^2, poly[2,1]^1}`
  std::string to_text() const;

 private:
  struct Trusted {};
  CanonicalForm(Field field, std::vector<ElementaryDivisor> divisors, Trusted);
  friend CanonicalForm elementary_divisors(const Matrix& a);
  friend RationalCanonical rcf(const Matrix& a);

  Field field_;
  std::vector<ElementaryDivisor> divisors_;
};

CanonicalForm parse_canonical_form(const Field& f, std::string_view text);

struct RationalCanonical {
  CanonicalForm form;
  /// P with P A P^{-1} = form.assemble().
  Matrix conjugator;
};

/// Divisor multiset only (kernel-dimension counting, no basis construction).
CanonicalForm elementary_divisors(const Matrix& a);
/// Full decomposition with a verified conjugator.
RationalCanonical rcf(const Matrix& a);

bool similar(const Matrix& a, const Matrix& b);
/// P with A = P B P^{-1}, when A and B are similar.
std::optional<Matrix> conjugator_between(const Matrix& a, const Matrix& b);
/// Throws ContractError for singular input.
bool similar_to_inverse(const Matrix& a);

}  // namespace involkit
