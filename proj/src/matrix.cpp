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

#include "involkit/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "linalg.hpp"
#include "scan.hpp"

namespace involkit {

namespace {

void require_dim(int n) {
  if (n < 1 || n > kMaxMatrixDim)
    throw ContractError("matrix dimension " + std::to_string(n) + " outside [1, " + std::to_string(kMaxMatrixDim) + "]");
}

void require_compatible(const Matrix& a, const Matrix& b, const char* where) {
  require_same_field(a.field(), b.field(), where);
  if (a.n() != b.n())
    throw ContractError(std::string(where) + ": dimension mismatch " + std::to_string(a.n()) + " vs " +
                        std::to_string(b.n()));
}

}  // namespace

Matrix::Matrix(Field field, int n, std::vector<Code> entries)
    : field_(std::move(field)), n_(n), entries_(std::move(entries)) {
  if (!field_) throw ContractError("matrix without a field");
  require_dim(n_);
  if (entries_.size() != static_cast<std::size_t>(n_) * n_) throw ContractError("matrix entry count is not n*n");
  for (Code c : entries_)
    if (c >= field_->size()) throw ContractError("matrix entry out of range");
}

Matrix Matrix::zero(const Field& f, int n) {
  require_dim(n);
  return {f, n, std::vector<Code>(static_cast<std::size_t>(n) * n, 0)};
}

Matrix Matrix::identity(const Field& f, int n) { return scalar(f, n, 1); }

Matrix Matrix::scalar(const Field& f, int n, Code c) {
  require_dim(n);
  std::vector<Code> e(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) e[i * n + i] = c;
  return {f, n, std::move(e)};
}

Matrix Matrix::unit(const Field& f, int i, int j, int n) {
  if (i < 1 || j < 1 || i > n || j > n) throw ContractError("unit matrix index out of range");
  return zero(f, n).with(i - 1, j - 1, 1);
}

Matrix Matrix::diag(const Field& f, const std::vector<Code>& d) {
  const int n = static_cast<int>(d.size());
  require_dim(n);
  std::vector<Code> e(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) e[i * n + i] = d[i];
  return {f, n, std::move(e)};
}

Matrix Matrix::from_ints(const Field& f, const std::vector<std::vector<std::int64_t>>& rows) {
  const int n = static_cast<int>(rows.size());
  require_dim(n);
  std::vector<Code> e;
  e.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw ContractError("matrix rows must have n entries");
    for (auto x : r) e.push_back(f->from_integer(x));
  }
  return {f, n, std::move(e)};
}

Matrix Matrix::with(int i, int j, Code value) const {
  Matrix m = *this;
  if (value >= field_->size()) throw ContractError("matrix entry out of range");
  m.entries_[i * n_ + j] = value;
  return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require_compatible(*this, o, "matrix add");
  std::vector<Code> e(entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = field_->add(entries_[i], o.entries_[i]);
  return {field_, n_, std::move(e)};
}

Matrix Matrix::operator-(const Matrix& o) const {
  require_compatible(*this, o, "matrix sub");
  std::vector<Code> e(entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = field_->sub(entries_[i], o.entries_[i]);
  return {field_, n_, std::move(e)};
}

Matrix Matrix::operator-() const { return scaled(field_->neg(1)); }

Matrix Matrix::operator*(const Matrix& o) const {
  require_compatible(*this, o, "matrix mul");
  std::vector<Code> e(entries_.size(), 0);
  const FieldSpec& F = *field_;
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const Code a = entries_[i * n_ + k];
      if (a == 0) continue;
      for (int j = 0; j < n_; ++j) e[i * n_ + j] = F.add(e[i * n_ + j], F.mul(a, o.entries_[k * n_ + j]));
    }
  return {field_, n_, std::move(e)};
}

Vector Matrix::operator*(const Vector& v) const {
  if (static_cast<int>(v.size()) != n_) throw ContractError("matrix-vector dimension mismatch");
  Vector r(n_, 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[i] = field_->add(r[i], field_->mul(entries_[i * n_ + j], v[j]));
  return r;
}

Matrix Matrix::scaled(Code c) const {
  std::vector<Code> e(entries_);
  for (Code& x : e) x = field_->mul(x, c);
  return {field_, n_, std::move(e)};
}

Matrix Matrix::transpose() const {
  std::vector<Code> e(entries_.size());
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) e[j * n_ + i] = entries_[i * n_ + j];
  return {field_, n_, std::move(e)};
}

Matrix Matrix::pow(int e) const {
  if (e < 0) return inverse(*this).pow(-e);
  Matrix acc = identity(field_, n_);
  Matrix base = *this;
  for (; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base;
    if (e > 1) base = base * base;
  }
  return acc;
}

Code Matrix::trace() const {
  Code t = 0;
  for (int i = 0; i < n_; ++i) t = field_->add(t, at(i, i));
  return t;
}

bool Matrix::operator==(const Matrix& o) const {
  require_same_field(field_, o.field_, "matrix eq");
  return n_ == o.n_ && entries_ == o.entries_;
}

bool Matrix::is_identity() const { return *this == identity(field_, n_); }

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Code c) { return c == 0; });
}

bool Matrix::is_scalar() const { return *this == scalar(field_, n_, at(0, 0)); }

std::string Matrix::to_text() const {
  std::string s = field_->header() + ":[";
  for (int i = 0; i < n_; ++i) {
    s += i ? ",[" : "[";
    for (int j = 0; j < n_; ++j) s += (j ? "," : "") + field_->element_text(at(i, j));
    s += ']';
  }
  return s + "]";
}

Matrix parse_matrix(std::string_view text) {
  const auto colon = text.find("):");
  if (colon == std::string_view::npos) throw ParseError("matrix text needs a 'GF(...):' header: '" + std::string(text) + "'");
  Field f = parse_field(text.substr(0, colon + 1));
  detail::Scanner sc(text.substr(colon + 2));
  std::vector<std::vector<Code>> rows;
  sc.expect('[');
  do {
    sc.expect('[');
    std::vector<Code> row;
    do {
      row.push_back(f->parse_element(sc.balanced_token()));
    } while (sc.consume(','));
    sc.expect(']');
    rows.push_back(std::move(row));
  } while (sc.consume(','));
  sc.expect(']');
  sc.require_end();
  const int n = static_cast<int>(rows.size());
  std::vector<Code> e;
  for (auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw ParseError("matrix is not square");
    e.insert(e.end(), r.begin(), r.end());
  }
  if (n < 1 || n > kMaxMatrixDim) throw ParseError("matrix dimension out of range");
  return {f, n, std::move(e)};
}

Code det(const Matrix& a) {
  const FieldSpec& F = *a.field();
  const int n = a.n();
  std::vector<Code> m = a.entries();
  Code d = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m[r * n + col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m[pivot * n + j], m[col * n + j]);
      d = F.neg(d);
    }
    const Code pv = m[col * n + col];
    d = F.mul(d, pv);
    const Code pinv = F.inv(pv);
    for (int r = col + 1; r < n; ++r) {
      const Code factor = F.mul(m[r * n + col], pinv);
      if (factor == 0) continue;
      for (int j = col; j < n; ++j) m[r * n + j] = F.sub(m[r * n + j], F.mul(factor, m[col * n + j]));
    }
  }
  return d;
}

int rank(const Matrix& a) {
  detail::Dense d(a.field(), a.n(), a.n(), a.entries());
  return d.rref().rank;
}

bool is_invertible(const Matrix& a) { return det(a) != 0; }

Matrix inverse(const Matrix& a) {
  const int n = a.n();
  const FieldSpec& F = *a.field();
  // Gauss-Jordan on [A | I].
  std::vector<Code> aug(static_cast<std::size_t>(n) * 2 * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i * 2 * n + j] = a.at(i, j);
    aug[i * 2 * n + n + i] = 1;
  }
  detail::Dense d(a.field(), n, 2 * n, std::move(aug));
  const auto info = d.rref();
  if (info.rank < n || info.pivots[n - 1] != n - 1) throw ContractError("matrix is singular");
  std::vector<Code> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e[i * n + j] = d.at(i, n + j);
  (void)F;
  return {a.field(), n, std::move(e)};
}

std::vector<Vector> nullspace(const Matrix& a) {
  detail::Dense d(a.field(), a.n(), a.n(), a.entries());
  return d.nullspace();
}

Matrix companion(const Polynomial& f) {
  if (!f.is_monic() || f.degree() < 1) throw ContractError("companion matrix needs a monic polynomial of degree >= 1");
  const int n = f.degree();
  const auto& F = f.field();
  Matrix m = Matrix::zero(F, n);
  std::vector<Code> e(m.entries());
  for (int i = 1; i < n; ++i) e[i * n + (i - 1)] = 1;
  for (int i = 0; i < n; ++i) e[i * n + (n - 1)] = F->neg(f.coeff(i));
  return {F, n, std::move(e)};
}

Matrix companion_inverse_formula(const Polynomial& f) {
  if (!f.is_monic() || f.degree() < 1) throw ContractError("companion matrix needs a monic polynomial of degree >= 1");
  const auto& F = f.field();
  if (f.coeff(0) == 0) throw ContractError("companion inverse needs a nonzero constant term");
  const int n = f.degree();
  const Code minus_a0_inv = F->neg(F->inv(f.coeff(0)));
  std::vector<Code> e(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    e[i * n] = F->mul(minus_a0_inv, f.coeff(i + 1));
    if (i + 1 < n) e[i * n + i + 1] = 1;
  }
  return {F, n, std::move(e)};
}

Polynomial charpoly(const Matrix& a) {
  const auto& field = a.field();
  const FieldSpec& F = *field;
  const int n = a.n();
  std::vector<Code> h = a.entries();
  auto H = [&](int i, int j) -> Code& { return h[i * n + j]; };

  // Similarity transform to upper Hessenberg form.
  for (int m = 1; m < n - 1; ++m) {
    int pivot = -1;
    for (int i = m; i < n; ++i)
      if (H(i, m - 1) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != m) {
      for (int j = 0; j < n; ++j) std::swap(H(pivot, j), H(m, j));
      for (int i = 0; i < n; ++i) std::swap(H(i, pivot), H(i, m));
    }
    const Code pinv = F.inv(H(m, m - 1));
    for (int i = m + 1; i < n; ++i) {
      const Code u = F.mul(H(i, m - 1), pinv);
      if (u == 0) continue;
      for (int j = 0; j < n; ++j) H(i, j) = F.sub(H(i, j), F.mul(u, H(m, j)));
      for (int r = 0; r < n; ++r) H(r, m) = F.add(H(r, m), F.mul(u, H(r, i)));
    }
  }

  // p_{m+1} = (x - h_mm) p_m - sum_{i<m} (h_{m,m-1} ... h_{i+1,i}) h_{i,m} p_i
  std::vector<Polynomial> p;
  p.reserve(n + 1);
  p.push_back(Polynomial::one(field));
  const Polynomial x = Polynomial::monomial(field, 1);
  for (int m = 0; m < n; ++m) {
    Polynomial next = (x - Polynomial::constant(field, H(m, m))) * p[m];
    Code t = 1;
    for (int i = m - 1; i >= 0; --i) {
      t = F.mul(t, H(i + 1, i));
      if (t == 0) break;
      const Code c = F.mul(t, H(i, m));
      if (c != 0) next = next - p[i].scaled(c);
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

Polynomial minpoly(const Matrix& a) {
  const auto& field = a.field();
  const int n = a.n();
  const int nn = n * n;
  // Rows of the Krylov table are vec(A^0), vec(A^1), ...; the first one in
  // the span of its predecessors yields the minimal polynomial.
  std::vector<Matrix> powers{Matrix::identity(field, n)};
  for (int d = 1; d <= n; ++d) {
    powers.push_back(powers.back() * a);
    // Solve sum_{i<d} c_i vec(A^i) = vec(A^d): columns are vec(A^i).
    std::vector<Code> sys(static_cast<std::size_t>(nn) * (d + 1), 0);
    for (int r = 0; r < nn; ++r) {
      for (int i = 0; i < d; ++i) sys[r * (d + 1) + i] = powers[i].entries()[r];
      sys[r * (d + 1) + d] = powers[d].entries()[r];
    }
    detail::Dense dense(field, nn, d + 1, std::move(sys));
    const auto info = dense.rref();
    if (info.rank == d && (info.rank == 0 || info.pivots[info.rank - 1] < d)) {
      std::vector<Code> c(d + 1, 0);
      for (int row = 0; row < info.rank; ++row) c[info.pivots[row]] = field->neg(dense.at(row, d));
      c[d] = 1;
      return {field, std::move(c)};
    }
  }
  throw ContractError("minimal polynomial not found");  // unreachable: Cayley-Hamilton
}

Matrix evaluate(const Polynomial& f, const Matrix& a) {
  require_same_field(f.field(), a.field(), "evaluate");
  Matrix acc = Matrix::zero(a.field(), a.n());
  for (int i = f.degree(); i >= 0; --i) acc = acc * a + Matrix::scalar(a.field(), a.n(), f.coeff(i));
  return acc;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) { return direct_sum(std::vector<Matrix>{a, b}); }

Matrix direct_sum(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) throw ContractError("direct sum of no blocks");
  int n = 0;
  for (const auto& b : blocks) {
    require_same_field(blocks.front().field(), b.field(), "direct_sum");
    n += b.n();
  }
  Matrix m = Matrix::zero(blocks.front().field(), n);
  std::vector<Code> e(m.entries());
  int off = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.n(); ++i)
      for (int j = 0; j < b.n(); ++j) e[(off + i) * n + off + j] = b.at(i, j);
    off += b.n();
  }
  return {blocks.front().field(), n, std::move(e)};
}

Matrix tau(const Field& f, int n) {
  Matrix m = Matrix::zero(f, n);
  std::vector<Code> e(m.entries());
  for (int i = 0; i < n; ++i) e[i * n + (n - 1 - i)] = 1;
  return {f, n, std::move(e)};
}

Matrix conjugate(const Matrix& a, const Matrix& p) { return p * a * inverse(p); }

Polynomial polynomial_det(PolyMatrix m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) throw ContractError("determinant of an empty matrix");
  const Field field = m[0][0].field();
  Polynomial sign = Polynomial::one(field);
  Polynomial prev = Polynomial::one(field);
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (!m[r][k].is_zero()) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return Polynomial::zero(field);
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace involkit
