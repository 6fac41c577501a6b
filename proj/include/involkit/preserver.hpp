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

// Linear maps on M_n(F): the standard preserver forms, application,
// set-preservation checks and recovery of a form from a raw map.
//
// Maps act on column-major vectorizations: vec(X)[i + j n] = X(i, j), and
// column i + j n of the action matrix is vec(T(E(i+1, j+1))).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "involkit/census.hpp"
#include "involkit/involution.hpp"
#include "involkit/matrix.hpp"

namespace involkit {

class LinearMapOnMatrices {
 public:
  /// `action` must be n^2 x n^2.
  LinearMapOnMatrices(int n, Matrix action);

  static LinearMapOnMatrices identity(const Field& f, int n);
  static LinearMapOnMatrices transpose(const Field& f, int n);

  const Field& field() const { return action_.field(); }
  int n() const { return n_; }
  const Matrix& action() const { return action_; }

  Matrix apply(const Matrix& x) const;
  bool is_unital() const;
  bool is_bijective() const { return is_invertible(action_); }

  /// (this o other)(X) = this(other(X)).
  LinearMapOnMatrices compose(const LinearMapOnMatrices& other) const;

  bool operator==(const LinearMapOnMatrices& o) const { return n_ == o.n_ && action_ == o.action_; }

  /// `linmap{GF(q), n, action=[[...],...]}`
  std::string to_text() const;

 private:
  int n_;
  Matrix action_;
};

LinearMapOnMatrices parse_linmap(std::string_view text);

Vector vectorize(const Matrix& x);
Matrix unvectorize(const Field& f, int n, const Vector& v);

enum class FormVariant { conjugation, congruence_pair };

/// conjugation:     X -> alpha P X P^{-1}  (or with X^t), alpha^2 = 1, Q = P^{-1}.
/// congruence_pair: X -> P X Q             (or with X^t), alpha = 1.
struct PreserverForm {
  FormVariant variant = FormVariant::conjugation;
  Code alpha = 1;
  Matrix P;
  Matrix Q;
  bool transpose = false;

  static PreserverForm conjugation(const Matrix& p, Code alpha, bool transpose);
  static PreserverForm congruence_pair(const Matrix& p, const Matrix& q, bool transpose);

  const Field& field() const { return P.field(); }
  int n() const { return P.n(); }

  /// The closed form evaluated directly.
  Matrix evaluate(const Matrix& x) const;

  bool operator==(const PreserverForm& o) const = default;

  /// `form{GF(q), variant, alpha=a, P=[[...]], Q=[[...]], transpose=true|false}`
  std::string to_text() const;
};

PreserverForm parse_form(std::string_view text);
std::string to_string(FormVariant v);

/// Throws ContractError for singular P or Q, alpha^2 != 1, a conjugation
/// whose Q is not P^{-1}, or alpha != 1 on a congruence pair.
LinearMapOnMatrices map_from_form(const PreserverForm& form);

struct CheckMode {
  enum class Kind { exhaustive, sample };
  Kind kind = Kind::exhaustive;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  static CheckMode exhaustive() { return {}; }
  static CheckMode sample(std::size_t count, std::uint64_t seed) { return {Kind::sample, count, seed}; }
};

/// `exhaustive` or `sample:N`.
CheckMode parse_check_mode(std::string_view text, std::uint64_t seed);
std::string to_string(const CheckMode& mode);

struct PreservationResult {
  bool preserved = true;
  std::optional<Matrix> counterexample;
  /// Set elements whose image was tested.
  std::size_t checked = 0;
  /// Sample mode: images whose membership came back unknown.
  std::size_t undecided = 0;
};

/// Checks map(X) in S for X in S. The identity is probed first; exhaustive
/// mode then scans the enumerated set in key order and reports the first
/// failure. Throws CapExceeded when exhaustive mode cannot enumerate S.
PreservationResult preserves_set(const LinearMapOnMatrices& map, SetId s, const CheckMode& mode,
                                 Exec exec = Exec::parallel);

/// Recovers (P, Q, transpose) from the rank-one structure of the images of
/// the matrix units. P is scaled so its first nonzero entry (row-major) is 1.
/// A pair with PQ = alpha I and alpha^2 = 1 is reported as a conjugation.
std::optional<PreserverForm> recognize_form(const LinearMapOnMatrices& map);

/// is_nilpotent(T(I)^{-1} T(N)) for a spanning set of nilpotents plus
/// `samples` random conjugates of strictly upper triangular matrices.
/// Throws ContractError when T(I) is singular.
bool nilpotent_pullback_check(const LinearMapOnMatrices& map, std::size_t samples = 200, std::uint64_t seed = 1);

/// X -> -X + tr(X) I on 2 x 2 matrices. Throws ContractError in char 2.
LinearMapOnMatrices exceptional_n2_map(const Field& f);

}  // namespace involkit
