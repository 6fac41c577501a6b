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

// Rectangular elimination helper shared by the matrix and canonical-form
// code. Not part of the public surface.

#include <vector>

#include "involkit/field.hpp"

namespace involkit::detail {

struct RrefInfo {
  int rank = 0;
  std::vector<int> pivots;  // pivot column of each nonzero row
};

class Dense {
 public:
  Dense(Field field, int rows, int cols, std::vector<Code> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {}

  Code at(int i, int j) const { return data_[i * cols_ + j]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  /// In-place reduced row echelon form.
  RrefInfo rref() {
    const FieldSpec& F = *field_;
    RrefInfo info;
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int pivot = -1;
      for (int r = row; r < rows_; ++r)
        if (data_[r * cols_ + col] != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      if (pivot != row)
        for (int j = 0; j < cols_; ++j) std::swap(data_[pivot * cols_ + j], data_[row * cols_ + j]);
      const Code pinv = F.inv(data_[row * cols_ + col]);
      for (int j = col; j < cols_; ++j) data_[row * cols_ + j] = F.mul(data_[row * cols_ + j], pinv);
      for (int r = 0; r < rows_; ++r) {
        if (r == row) continue;
        const Code factor = data_[r * cols_ + col];
        if (factor == 0) continue;
        for (int j = col; j < cols_; ++j)
          data_[r * cols_ + j] = F.sub(data_[r * cols_ + j], F.mul(factor, data_[row * cols_ + j]));
      }
      info.pivots.push_back(col);
      ++row;
    }
    info.rank = row;
    return info;
  }

  /// Basis of the right kernel (vectors of length cols).
  std::vector<std::vector<Code>> nullspace() {
    const FieldSpec& F = *field_;
    const auto info = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int p : info.pivots) is_pivot[p] = true;
    std::vector<std::vector<Code>> basis;
    for (int free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Code> v(cols_, 0);
      v[free] = 1;
      for (int r = 0; r < info.rank; ++r) v[info.pivots[r]] = F.neg(at(r, free));
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  Field field_;
  int rows_;
  int cols_;
  std::vector<Code> data_;
};

/// Incremental basis of a subspace of F^dim, kept in echelon form.
class SpanBuilder {
 public:
  SpanBuilder(Field field, int dim) : field_(std::move(field)), dim_(dim) {}

  int size() const { return static_cast<int>(rows_.size()); }

  /// Reduces v against the current basis; returns the residue.
  std::vector<Code> reduce(std::vector<Code> v) const {
    const FieldSpec& F = *field_;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Code c = v[pivots_[r]];
      if (c == 0) continue;
      for (int j = 0; j < dim_; ++j) v[j] = F.sub(v[j], F.mul(c, rows_[r][j]));
    }
    return v;
  }

  bool contains(const std::vector<Code>& v) const {
    const auto res = reduce(v);
    for (Code c : res)
      if (c != 0) return false;
    return true;
  }

  /// Adds v when independent; returns whether the span grew.
  bool add(const std::vector<Code>& v) {
    const FieldSpec& F = *field_;
    auto res = reduce(v);
    int pivot = -1;
    for (int j = 0; j < dim_; ++j)
      if (res[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot < 0) return false;
    const Code pinv = F.inv(res[pivot]);
    for (Code& c : res) c = F.mul(c, pinv);
    // Keep earlier rows reduced at the new pivot.
    for (auto& row : rows_) {
      const Code c = row[pivot];
      if (c == 0) continue;
      for (int j = 0; j < dim_; ++j) row[j] = F.sub(row[j], F.mul(c, res[j]));
    }
    rows_.push_back(std::move(res));
    pivots_.push_back(pivot);
    return true;
  }

 private:
  Field field_;
  int dim_;
  std::vector<std::vector<Code>> rows_;
  std::vector<int> pivots_;
};

}  // namespace involkit::detail
