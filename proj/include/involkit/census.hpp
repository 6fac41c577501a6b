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

// Exhaustive-enumeration machinery: census limits, packed matrix keys, and
// the scan kernels behind the product-closure oracles.
//
// Every kernel has a serial reference and an OpenMP version selected by Exec.
// Both return identical results; tests compare them.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "involkit/matrix.hpp"

namespace involkit {

enum class Exec { serial, parallel };

struct CensusLimits {
  /// Largest field size admitted to exhaustive enumeration.
  int field_cap = 11;
  /// Largest matrix-space size q^(n^2) admitted to exhaustive enumeration.
  std::uint64_t space_cap = 20'000'000;
};

/// Current limits. The field cap starts from INVOLKIT_CAP when set.
CensusLimits census_limits();
void set_field_cap(int cap);

/// q^(n^2), saturating at UINT64_MAX.
std::uint64_t space_size(const Field& f, int n);
bool enumerable(const Field& f, int n);
/// Throws CapExceeded when (f, n) is outside the census limits.
void require_enumerable(const Field& f, int n, const char* what);

using Key = std::uint64_t;

/// The n x n matrices over a small field, indexed by Key = sum code_i q^i
/// over row-major positions i.
class PackedSpace {
 public:
  PackedSpace(Field f, int n);

  const Field& field() const { return field_; }
  int n() const { return n_; }
  Code q() const { return q_; }
  /// Number of matrices; only meaningful when the space is enumerable.
  std::uint64_t size() const { return size_; }

  Key pack(const Matrix& a) const;
  Matrix unpack(Key k) const;
  void unpack(Key k, std::uint8_t* out) const;
  Key pack(const std::uint8_t* entries) const;
  /// Key of the product of two unpacked matrices.
  Key multiply(const std::uint8_t* a, const std::uint8_t* b) const;

 private:
  Field field_;
  int n_;
  Code q_;
  std::uint64_t size_;
  std::vector<std::uint8_t> add_;
  std::vector<std::uint8_t> mul_;
  std::vector<Key> place_;
};

/// Exact set of matrices stored as sorted keys.
class MatrixSet {
 public:
  MatrixSet(Field f, int n, std::vector<Key> sorted_keys);

  const Field& field() const { return space_.field(); }
  int n() const { return space_.n(); }
  const PackedSpace& space() const { return space_; }
  const std::vector<Key>& keys() const { return keys_; }
  std::size_t size() const { return keys_.size(); }
  bool contains(Key k) const;
  bool contains(const Matrix& a) const;
  std::vector<Matrix> matrices() const;

  bool operator==(const MatrixSet& o) const { return keys_ == o.keys_; }
  bool operator!=(const MatrixSet& o) const { return keys_ != o.keys_; }
  /// Subset test.
  bool operator<=(const MatrixSet& o) const;

 private:
  PackedSpace space_;
  std::vector<Key> keys_;
};

namespace kernels {

/// {L R : L in left, R in right} as sorted keys.
std::vector<Key> product_closure(const PackedSpace& space, const std::vector<Key>& left,
                                 const std::vector<Key>& right, Exec exec);

/// Candidates A from `set` with A X in `set` for every X in `set`.
std::vector<Key> left_stabilizer(const PackedSpace& space, const std::vector<Key>& set, Exec exec);

/// Smallest i < count with pred(i), or none. Exceptions thrown by pred
/// propagate after the scan stops.
std::optional<std::size_t> first_hit(std::size_t count, const std::function<bool(std::size_t)>& pred, Exec exec);

}  // namespace kernels

}  // namespace involkit
