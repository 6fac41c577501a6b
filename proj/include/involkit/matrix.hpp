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
#include <vector>

#include "involkit/field.hpp"
#include "involkit/poly.hpp"

namespace involkit {

/// Largest dimension a Matrix may have. Matrices of maps on M_n(F) are
/// n^2 x n^2, so this is larger than the cap used by the canonical-form code.
inline constexpr int kMaxMatrixDim = 64;
/// Largest n accepted by canonical forms, membership tests and witnesses.
inline constexpr int kMaxCanonicalDim = 8;

using Vector = std::vector<Code>;

/// Dense square matrix over a finite field, row-major, immutable in practice
/// (every operation returns a fresh value).
class Matrix {
 public:
  Matrix(Field field, int n, std::vector<Code> entries);

  static Matrix zero(const Field& f, int n);
  static Matrix identity(const Field& f, int n);
  static Matrix scalar(const Field& f, int n, Code c);
  /// E_{i,j}: single 1 at row i, column j (1-based, as in the usual notation).
  static Matrix unit(const Field& f, int i, int j, int n);
  static Matrix diag(const Field& f, const std::vector<Code>& d);
  /// Rows of integers reduced mod p.
  static Matrix from_ints(const Field& f, const std::vector<std::vector<std::int64_t>>& rows);

  const Field& field() const { return field_; }
  int n() const { return n_; }
  Code at(int i, int j) const { return entries_[i * n_ + j]; }
  FieldElement element(int i, int j) const { return {field_, at(i, j)}; }
  const std::vector<Code>& entries() const { return entries_; }
  Matrix with(int i, int j, Code value) const;

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator-() const;
  Matrix operator*(const Matrix& o) const;
  Vector operator*(const Vector& v) const;
  Matrix scaled(Code c) const;
  Matrix transpose() const;
  Matrix pow(int e) const;
  Code trace() const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  bool is_identity() const;
  bool is_zero() const;
  bool is_scalar() const;

  /// `GF(p^k):[[r00,r01,...],...]`
  std::string to_text() const;

 private:
  Field field_;
  int n_;
  std::vector<Code> entries_;
};

Matrix parse_matrix(std::string_view text);

Code det(const Matrix& a);
int rank(const Matrix& a);
bool is_invertible(const Matrix& a);
/// Throws ContractError when singular.
Matrix inverse(const Matrix& a);
/// Basis of {v : A v = 0}.
std::vector<Vector> nullspace(const Matrix& a);

/// Companion matrix: ones on the subdiagonal, last column -a_0..-a_{n-1}.
Matrix companion(const Polynomial& f);
/// Closed-form inverse of the companion matrix (first column -a_0^{-1} a_i,
/// ones on the superdiagonal), for f(0) != 0.
Matrix companion_inverse_formula(const Polynomial& f);

/// Characteristic polynomial det(xI - A) by Hessenberg reduction.
Polynomial charpoly(const Matrix& a);
/// Minimal polynomial from the first linear dependency among I, A, A^2, ...
Polynomial minpoly(const Matrix& a);
/// f(A) by Horner's rule.
Matrix evaluate(const Polynomial& f, const Matrix& a);

Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix direct_sum(const std::vector<Matrix>& blocks);
/// Anti-diagonal permutation involution.
Matrix tau(const Field& f, int n);
/// P A P^{-1}; throws ContractError when P is singular.
Matrix conjugate(const Matrix& a, const Matrix& p);

/// Square matrix with polynomial entries, used for determinants over F[t].
using PolyMatrix = std::vector<std::vector<Polynomial>>;
/// Fraction-free (Bareiss) determinant over F[t].
Polynomial polynomial_det(PolyMatrix m);

}  // namespace involkit
