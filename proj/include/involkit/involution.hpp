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

// Products of involutions: membership in B (two factors), C (three) and
// D (four), factorizations, exhaustive oracles, and the witness matrices
// used against the preserver classification.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "involkit/canonical.hpp"
#include "involkit/census.hpp"
#include "involkit/matrix.hpp"

namespace involkit {

enum class SetId { B, C, D };

/// Number of involution factors: 2, 3, 4.
int arity(SetId s);
std::string to_string(SetId s);
SetId parse_set_id(std::string_view text);

struct InvolutionFactorization {
  std::vector<Matrix> factors;
  Matrix product;

  /// Every factor squares to I and the ordered product equals `product`.
  bool verify() const;
  /// Factor list in matrix text, `[F1; F2; ...]`.
  std::string to_text() const;
};

enum class Membership { no, yes, unknown };
enum class Method { characterized, bfs_oracle, search };

std::string to_string(Membership m);
std::string to_string(Method m);

struct MembershipVerdict {
  Membership member = Membership::unknown;
  Method method = Method::characterized;
  std::optional<InvolutionFactorization> factorization;
  std::optional<CanonicalForm> form;

  bool yes() const { return member == Membership::yes; }
  bool no() const { return member == Membership::no; }
  std::string certificate_text() const;
};

bool is_involution(const Matrix& a);

/// Divisor pairing test: every divisor is a power of a self-reciprocal
/// irreducible or is matched by its reciprocal elsewhere in the multiset.
bool reciprocal_pairing(const CanonicalForm& form);

/// Throws ContractError for singular input. The certificate is the form.
MembershipVerdict in_B(const Matrix& a);
MembershipVerdict in_C(const Matrix& a, Exec exec = Exec::parallel);
MembershipVerdict in_D(const Matrix& a);
MembershipVerdict membership(SetId s, const Matrix& a, Exec exec = Exec::parallel);

/// Whether C = D is known for (field, n) from the classification of the
/// equal cases.
bool c_equals_d(const Field& f, int n);

/// All J with J^2 = I, each exactly once. Throws CapExceeded when the field
/// is beyond the census cap or the count estimate is too large.
std::vector<Matrix> enumerate_involutions(const Field& f, int n);

/// Exact product-closure sets, cached per (field, n). Throws CapExceeded
/// outside the census limits.
const MatrixSet& bfs_set(SetId s, const Field& f, int n, Exec exec = Exec::parallel);
const MatrixSet& involution_set(const Field& f, int n);
inline const MatrixSet& in_B_bfs(const Field& f, int n) { return bfs_set(SetId::B, f, n); }
inline const MatrixSet& in_C_bfs(const Field& f, int n) { return bfs_set(SetId::C, f, n); }
inline const MatrixSet& in_D_bfs(const Field& f, int n) { return bfs_set(SetId::D, f, n); }

/// J1 J2 = A. Throws ContractError when A is not in B.
InvolutionFactorization two_involutions(const Matrix& a);

/// Search certificate for k = 3 or 4 by scanning the involutions. Throws
/// CapExceeded when the involutions cannot be enumerated.
std::optional<InvolutionFactorization> k_involutions_search(const Matrix& a, int k, Exec exec = Exec::parallel);

/// charpoly(N) = x^n.
bool is_nilpotent(const Matrix& a);
/// det(I + tN) as a polynomial in t.
Polynomial pencil_det(const Matrix& a);

/// Left-multiplier stabilizer of C: A with A C within C.
Membership lambda_member(const Matrix& a, Exec exec = Exec::parallel);
const MatrixSet& lambda_census(const Field& f, int n, Exec exec = Exec::parallel);

/// N = E(1, n) for a power of a self-reciprocal irreducible f of degree n >= 3.
Matrix witness_type1(const Polynomial& f);

/// C_g + C_reciprocal(g), the base matrix for witness_type2.
Matrix type2_base(const Polynomial& g);

struct Type2Witness {
  /// Strictly upper triangular of size 2n with (C_g + C_g~)(I + N) not in B.
  Matrix N;
  /// N = O + E(1, n) worked. When false, N came from the fallback search
  /// over strictly upper triangular matrices ordered by support size.
  bool from_construction;
};
Type2Witness witness_type2(const Polynomial& g);

/// (0 -1; 1 -a1).
Matrix two_base(const Field& f, Code a1);
/// (0 -1; 1 -a1) + (alpha).
Matrix three_base(const Field& f, Code a1, Code alpha);
/// Trace-zero X in B with r A X not in B, A = two_base(a1).
Matrix witness_two(const Field& f, Code a1, Code r);
/// Trace-zero X in B with r A X not in B, A = three_base(a1, alpha).
Matrix witness_three(const Field& f, Code a1, Code alpha, Code r);

}  // namespace involkit
