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

#include "involkit/involution.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "linalg.hpp"

namespace involkit {

int arity(SetId s) {
  switch (s) {
    case SetId::B: return 2;
    case SetId::C: return 3;
    case SetId::D: return 4;
  }
  return 0;
}

std::string to_string(SetId s) {
  switch (s) {
    case SetId::B: return "B";
    case SetId::C: return "C";
    case SetId::D: return "D";
  }
  return "?";
}

SetId parse_set_id(std::string_view text) {
  if (text == "B") return SetId::B;
  if (text == "C") return SetId::C;
  if (text == "D") return SetId::D;
  throw ParseError("unknown set '" + std::string(text) + "' (expected B, C or D)");
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::no: return "false";
    case Membership::yes: return "true";
    case Membership::unknown: return "unknown";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::characterized: return "characterized";
    case Method::bfs_oracle: return "bfs-oracle";
    case Method::search: return "search";
  }
  return "?";
}

bool InvolutionFactorization::verify() const {
  if (factors.empty()) return false;
  Matrix acc = Matrix::identity(product.field(), product.n());
  for (const auto& f : factors) {
    if (!is_involution(f)) return false;
    acc = acc * f;
  }
  return acc == product;
}

std::string InvolutionFactorization::to_text() const {
  std::string s = "[";
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "; " : "") + factors[i].to_text();
  return s + "]";
}

std::string MembershipVerdict::certificate_text() const {
  if (factorization) return factorization->to_text();
  if (form) return form->to_text();
  return "none";
}

bool is_involution(const Matrix& a) { return (a * a).is_identity(); }

bool reciprocal_pairing(const CanonicalForm& form) {
  const auto& divs = form.divisors();
  std::vector<bool> used(divs.size(), false);
  for (std::size_t i = 0; i < divs.size(); ++i) {
    if (used[i]) continue;
    const auto& d = divs[i];
    if (d.base.coeff(0) == 0) return false;
    if (is_self_reciprocal(d.base)) {
      used[i] = true;
      continue;
    }
    const ElementaryDivisor partner{reciprocal(d.base), d.multiplicity};
    bool found = false;
    for (std::size_t j = i + 1; j < divs.size() && !found; ++j)
      if (!used[j] && divs[j] == partner) {
        used[i] = used[j] = true;
        found = true;
      }
    if (!found) return false;
  }
  return true;
}

MembershipVerdict in_B(const Matrix& a) {
  if (!is_invertible(a)) throw ContractError("in_B: matrix is singular");
  MembershipVerdict v;
  v.method = Method::characterized;
  v.form = elementary_divisors(a);
  v.member = reciprocal_pairing(*v.form) ? Membership::yes : Membership::no;
  return v;
}

MembershipVerdict in_D(const Matrix& a) {
  const auto& f = a.field();
  const Code d = det(a);
  MembershipVerdict v;
  v.method = Method::characterized;
  v.member = f->mul(d, d) == 1 ? Membership::yes : Membership::no;
  return v;
}

bool c_equals_d(const Field& f, int n) {
  if (n <= 2) return true;
  const Code q = f->size();
  if (q == 2 || q == 3 || q == 5) return true;
  if (n == 3) {
    if (f->characteristic() == 3) return true;
    for (Code t = 0; t < q; ++t)
      if (f->add(f->add(f->mul(t, t), t), 1) == 0) return false;
    return true;
  }
  return n == 4 && f->characteristic() == 2;
}

MembershipVerdict in_C(const Matrix& a, Exec exec) {
  const auto& f = a.field();
  const int n = a.n();
  if (c_equals_d(f, n)) return in_D(a);
  if (n == 3) {
    MembershipVerdict v = in_D(a);
    if (v.yes() && a.is_scalar()) {
      const Code alpha = a.at(0, 0);
      const Code a2 = f->mul(alpha, alpha);
      if (f->add(f->add(f->mul(a2, a2), a2), 1) == 0) v.member = Membership::no;
    }
    return v;
  }
  MembershipVerdict v;
  if (enumerable(f, n)) {
    v.method = Method::bfs_oracle;
    v.member = bfs_set(SetId::C, f, n, exec).contains(a) ? Membership::yes : Membership::no;
  } else {
    v.method = Method::search;
    v.member = Membership::unknown;
  }
  return v;
}

MembershipVerdict membership(SetId s, const Matrix& a, Exec exec) {
  switch (s) {
    case SetId::B:
      if (!is_invertible(a)) {
        MembershipVerdict v;
        v.member = Membership::no;
        return v;
      }
      return in_B(a);
    case SetId::C: return in_C(a, exec);
    case SetId::D: return in_D(a);
  }
  throw ContractError("membership: bad set");
}

namespace {

// Calls fn(rows, pivots) for every r-dimensional subspace of F^n, given by
// its reduced row echelon basis.
template <class Fn>
void for_each_subspace(const Field& f, int n, int r, Fn&& fn) {
  const Code q = f->size();
  std::vector<int> pivots(r);
  for (int i = 0; i < r; ++i) pivots[i] = i;
  while (true) {
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < r; ++i)
      for (int j = pivots[i] + 1; j < n; ++j)
        if (!is_pivot[j]) free.emplace_back(i, j);
    std::vector<Code> values(free.size(), 0);
    while (true) {
      std::vector<Vector> rows(r, Vector(n, 0));
      for (int i = 0; i < r; ++i) rows[i][pivots[i]] = 1;
      for (std::size_t t = 0; t < free.size(); ++t) rows[free[t].first][free[t].second] = values[t];
      fn(rows, pivots);
      std::size_t t = 0;
      while (t < values.size() && ++values[t] == q) values[t++] = 0;
      if (t == values.size()) break;
    }
    int i = r - 1;
    while (i >= 0 && pivots[i] == n - r + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < r; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

// Calls fn(c) for every rows x cols coefficient block over F.
template <class Fn>
void for_each_block(const Field& f, int rows, int cols, Fn&& fn) {
  const Code q = f->size();
  std::vector<Code> c(static_cast<std::size_t>(rows) * cols, 0);
  while (true) {
    fn(c);
    std::size_t t = 0;
    while (t < c.size() && ++c[t] == q) c[t++] = 0;
    if (t == c.size()) return;
  }
}

void require_involution_enumeration(const Field& f, int n) {
  const auto lim = census_limits();
  if (f->size() > static_cast<Code>(lim.field_cap))
    throw CapExceeded("involution enumeration: field size " + std::to_string(f->size()) +
                      " exceeds the census cap " + std::to_string(lim.field_cap));
  // Each conjugacy class has at most q^(n^2/2) members up to a constant.
  std::uint64_t estimate = n + 1;
  for (int i = 0; i < (n * n + 1) / 2; ++i) {
    estimate *= f->size();
    if (estimate > lim.space_cap) throw CapExceeded("involution enumeration: too many involutions to list");
  }
}

std::vector<Matrix> involutions_odd(const Field& f, int n) {
  std::vector<Matrix> out;
  const Code minus_one = f->neg(1);
  for (int r = 0; r <= n; ++r) {
    std::vector<Code> d(n, minus_one);
    std::fill(d.begin(), d.begin() + r, 1);
    const Matrix diag = Matrix::diag(f, d);
    for_each_subspace(f, n, r, [&](const std::vector<Vector>& u, const std::vector<int>& pivots) {
      std::vector<int> rest;
      for (int j = 0; j < n; ++j)
        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) rest.push_back(j);
      const int m = n - r;
      for_each_block(f, m, r, [&](const std::vector<Code>& c) {
        std::vector<Code> basis(static_cast<std::size_t>(n) * n, 0);
        for (int j = 0; j < r; ++j)
          for (int i = 0; i < n; ++i) basis[i * n + j] = u[j][i];
        for (int k = 0; k < m; ++k) {
          Vector w(n, 0);
          w[rest[k]] = 1;
          for (int j = 0; j < r; ++j) {
            const Code cj = c[k * r + j];
            if (cj == 0) continue;
            for (int i = 0; i < n; ++i) w[i] = f->add(w[i], f->mul(cj, u[j][i]));
          }
          for (int i = 0; i < n; ++i) basis[i * n + r + k] = w[i];
        }
        const Matrix b(f, n, std::move(basis));
        out.push_back(b * diag * inverse(b));
      });
    });
  }
  return out;
}

std::vector<Matrix> involutions_char_two(const Field& f, int n) {
  std::vector<Matrix> out;
  for (int s = 0; 2 * s <= n; ++s) {
    for_each_subspace(f, n, s, [&](const std::vector<Vector>& u, const std::vector<int>&) {
      std::vector<Code> rows;
      for (const auto& v : u) rows.insert(rows.end(), v.begin(), v.end());
      std::vector<Vector> perp;
      if (s == 0) {
        for (int i = 0; i < n; ++i) {
          Vector e(n, 0);
          e[i] = 1;
          perp.push_back(e);
        }
      } else {
        perp = detail::Dense(f, s, n, rows).nullspace();
      }
      const int m = n - s;
      for_each_block(f, s, m, [&](const std::vector<Code>& c) {
        std::vector<Vector> y(s, Vector(n, 0));
        detail::SpanBuilder span(f, n);
        for (int i = 0; i < s; ++i) {
          for (int k = 0; k < m; ++k) {
            const Code ck = c[i * m + k];
            if (ck == 0) continue;
            for (int j = 0; j < n; ++j) y[i][j] = f->add(y[i][j], f->mul(ck, perp[k][j]));
          }
          if (!span.add(y[i])) return;
        }
        std::vector<Code> e(static_cast<std::size_t>(n) * n, 0);
        for (int a = 0; a < n; ++a) {
          e[a * n + a] = 1;
          for (int b = 0; b < n; ++b)
            for (int i = 0; i < s; ++i) e[a * n + b] = f->add(e[a * n + b], f->mul(u[i][a], y[i][b]));
        }
        out.emplace_back(f, n, std::move(e));
      });
    });
  }
  return out;
}

struct CensusEntry {
  std::unique_ptr<std::vector<Matrix>> involution_list;
  std::unique_ptr<MatrixSet> involutions;
  std::unique_ptr<MatrixSet> sets[3];
  std::unique_ptr<MatrixSet> lambda;
};

std::recursive_mutex census_mutex;

CensusEntry& census_entry(const Field& f, int n) {
  static std::map<std::pair<std::string, int>, CensusEntry> entries;
  return entries[{f->header(), n}];
}

const std::vector<Matrix>& involution_list(const Field& f, int n) {
  std::lock_guard lock(census_mutex);
  auto& e = census_entry(f, n);
  if (!e.involution_list) e.involution_list = std::make_unique<std::vector<Matrix>>(enumerate_involutions(f, n));
  return *e.involution_list;
}

}  // namespace

std::vector<Matrix> enumerate_involutions(const Field& f, int n) {
  if (n < 1) throw ContractError("enumerate_involutions: n must be positive");
  require_involution_enumeration(f, n);
  return f->is_char_two() ? involutions_char_two(f, n) : involutions_odd(f, n);
}

const MatrixSet& involution_set(const Field& f, int n) {
  require_enumerable(f, n, "involution set");
  std::lock_guard lock(census_mutex);
  auto& e = census_entry(f, n);
  if (!e.involutions) {
    PackedSpace space(f, n);
    std::vector<Key> keys;
    for (const auto& j : involution_list(f, n)) keys.push_back(space.pack(j));
    std::sort(keys.begin(), keys.end());
    e.involutions = std::make_unique<MatrixSet>(f, n, std::move(keys));
  }
  return *e.involutions;
}

const MatrixSet& bfs_set(SetId s, const Field& f, int n, Exec exec) {
  require_enumerable(f, n, "product closure");
  std::lock_guard lock(census_mutex);
  auto& e = census_entry(f, n);
  const int idx = static_cast<int>(s);
  if (!e.sets[idx]) {
    const MatrixSet& inv = involution_set(f, n);
    const MatrixSet& right = s == SetId::B ? inv : bfs_set(static_cast<SetId>(idx - 1), f, n, exec);
    e.sets[idx] = std::make_unique<MatrixSet>(f, n, kernels::product_closure(inv.space(), inv.keys(), right.keys(), exec));
  }
  return *e.sets[idx];
}

const MatrixSet& lambda_census(const Field& f, int n, Exec exec) {
  require_enumerable(f, n, "lambda census");
  std::lock_guard lock(census_mutex);
  auto& e = census_entry(f, n);
  if (!e.lambda) {
    const MatrixSet& c = bfs_set(SetId::C, f, n, exec);
    e.lambda = std::make_unique<MatrixSet>(f, n, kernels::left_stabilizer(c.space(), c.keys(), exec));
  }
  return *e.lambda;
}

Membership lambda_member(const Matrix& a, Exec exec) {
  const auto& f = a.field();
  const int n = a.n();
  if (enumerable(f, n)) return lambda_census(f, n, exec).contains(a) ? Membership::yes : Membership::no;
  if (c_equals_d(f, n)) return in_D(a).member;
  if (n == 3 && f->characteristic() != 2 && f->characteristic() != 3) {
    const Matrix id = Matrix::identity(f, 3);
    return (a == id || a == -id) ? Membership::yes : Membership::no;
  }
  return Membership::unknown;
}

InvolutionFactorization two_involutions(const Matrix& a) {
  if (!is_invertible(a)) throw ContractError("two_involutions: matrix is singular");
  const auto& f = a.field();
  const int n = a.n();
  const auto r = rcf(a);
  const auto& divs = r.form.divisors();

  std::vector<int> offset(divs.size() + 1, 0);
  for (std::size_t i = 0; i < divs.size(); ++i) offset[i + 1] = offset[i] + divs[i].degree();

  // S with S C S = C^{-1} for the canonical matrix C.
  std::vector<Code> s(static_cast<std::size_t>(n) * n, 0);
  std::vector<bool> used(divs.size(), false);
  for (std::size_t i = 0; i < divs.size(); ++i) {
    if (used[i]) continue;
    const int d = divs[i].degree();
    std::size_t j = i;
    if (!is_self_reciprocal(divs[i].base)) {
      const ElementaryDivisor partner{reciprocal(divs[i].base), divs[i].multiplicity};
      j = i + 1;
      while (j < divs.size() && (used[j] || !(divs[j] == partner))) ++j;
      if (j == divs.size()) throw ContractError("two_involutions: matrix is not a product of two involutions");
    }
    used[i] = used[j] = true;
    for (int t = 0; t < d; ++t) {
      s[(offset[i] + t) * n + offset[j] + d - 1 - t] = 1;
      s[(offset[j] + t) * n + offset[i] + d - 1 - t] = 1;
    }
  }

  const Matrix sm(f, n, std::move(s));
  const Matrix p_inv = inverse(r.conjugator);
  const Matrix j2 = p_inv * sm * r.conjugator;
  InvolutionFactorization out{{a * j2, j2}, a};
  if (!out.verify()) throw std::logic_error("two_involutions: factorization failed verification");
  return out;
}

namespace {

std::optional<InvolutionFactorization> search_three(const Matrix& a, const std::vector<Matrix>& invs, Exec exec) {
  auto ok = [&](std::size_t i) {
    const Matrix m = invs[i] * a;
    return is_invertible(m) && in_B(m).yes();
  };
  const auto hit = kernels::first_hit(invs.size(), ok, exec);
  if (!hit) return std::nullopt;
  const Matrix& j = invs[*hit];
  auto rest = two_involutions(j * a);
  return InvolutionFactorization{{j, rest.factors[0], rest.factors[1]}, a};
}

}  // namespace

std::optional<InvolutionFactorization> k_involutions_search(const Matrix& a, int k, Exec exec) {
  if (k != 3 && k != 4) throw ContractError("k_involutions_search: k must be 3 or 4");
  const auto& invs = involution_list(a.field(), a.n());
  std::optional<InvolutionFactorization> out;
  if (k == 3) {
    out = search_three(a, invs, exec);
  } else {
    auto ok = [&](std::size_t i) { return search_three(invs[i] * a, invs, Exec::serial).has_value(); };
    const auto hit = kernels::first_hit(invs.size(), ok, exec);
    if (hit) {
      const Matrix& j = invs[*hit];
      auto rest = search_three(j * a, invs, Exec::serial);
      out = InvolutionFactorization{{j, rest->factors[0], rest->factors[1], rest->factors[2]}, a};
    }
  }
  if (out && !out->verify()) throw std::logic_error("k_involutions_search: certificate failed verification");
  return out;
}

bool is_nilpotent(const Matrix& a) { return charpoly(a) == Polynomial::monomial(a.field(), a.n()); }

Polynomial pencil_det(const Matrix& a) {
  const auto& f = a.field();
  const int n = a.n();
  PolyMatrix m(n, std::vector<Polynomial>(n, Polynomial::zero(f)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = Polynomial(f, {i == j ? Code{1} : Code{0}, a.at(i, j)});
  return polynomial_det(std::move(m));
}

namespace {

void require_unit_monic(const Polynomial& g, int min_degree, const char* what) {
  if (!g.is_monic() || g.degree() < min_degree)
    throw ContractError(std::string(what) + ": needs a monic polynomial of degree >= " + std::to_string(min_degree));
  if (g.coeff(0) == 0) throw ContractError(std::string(what) + ": constant term must be nonzero");
}

bool outside_B(const Matrix& m) { return !in_B(m).yes(); }

}  // namespace

Matrix witness_type1(const Polynomial& f) {
  require_unit_monic(f, 3, "witness_type1");
  if (!power_of_self_reciprocal_irreducible(f))
    throw ContractError("witness_type1: polynomial is not a power of a self-reciprocal irreducible");
  const int n = f.degree();
  const Matrix N = Matrix::unit(f.field(), 1, n, n);
  if (!outside_B(companion(f) * (Matrix::identity(f.field(), n) + N)))
    throw std::logic_error("witness_type1: product stayed in B");
  return N;
}

Matrix type2_base(const Polynomial& g) {
  require_unit_monic(g, 1, "type2_base");
  return direct_sum(companion(g), companion(reciprocal(g)));
}

Type2Witness witness_type2(const Polynomial& g) {
  require_unit_monic(g, 2, "witness_type2");
  if (power_of_self_reciprocal_irreducible(g))
    throw ContractError("witness_type2: polynomial is a power of a self-reciprocal irreducible");
  const auto& f = g.field();
  const int n = g.degree();
  const Matrix a = type2_base(g);
  const Matrix id = Matrix::identity(f, 2 * n);
  const Matrix standard = direct_sum(Matrix::zero(f, n), Matrix::unit(f, 1, n, n));
  if (outside_B(a * (id + standard))) return {standard, true};
  // Fallback: strictly upper triangular N by support size, then positions
  // in row-major order, then values in element order.
  const int m = 2 * n;
  std::vector<int> slots;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) slots.push_back(i * m + j);
  const int total = static_cast<int>(slots.size());
  const auto& elems = f->elements();
  const Code q = f->size();
  for (int support = 1; support <= total; ++support) {
    std::vector<int> pick(support);
    for (int i = 0; i < support; ++i) pick[i] = i;
    while (true) {
      std::vector<Code> digit(support, 1);
      while (true) {
        std::vector<Code> e(static_cast<std::size_t>(m) * m, 0);
        for (int t = 0; t < support; ++t) e[slots[pick[t]]] = elems[digit[t]];
        Matrix N(f, m, std::move(e));
        if (outside_B(a * (id + N))) return {std::move(N), false};
        int t = support - 1;
        while (t >= 0 && ++digit[t] == q) digit[t--] = 1;
        if (t < 0) break;
      }
      int i = support - 1;
      while (i >= 0 && pick[i] == total - support + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < support; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw std::logic_error("witness_type2: no strictly upper triangular witness");
}

Matrix two_base(const Field& f, Code a1) { return Matrix(f, 2, {0, f->neg(1), 1, f->neg(a1)}); }

Matrix three_base(const Field& f, Code a1, Code alpha) {
  if (f->mul(alpha, alpha) != 1) throw ContractError("three_base: alpha must be 1 or -1");
  return direct_sum(two_base(f, a1), Matrix(f, 1, {alpha}));
}

namespace {

void require_witness_args(const Field& f, Code r, const char* what) {
  if (f->is_char_two()) throw ContractError(std::string(what) + ": characteristic 2 is excluded");
  if (r == 0) throw ContractError(std::string(what) + ": r must be nonzero");
}

void check_witness(const Matrix& x, const Matrix& a, Code r, const char* what) {
  if (x.trace() != 0 || !in_B(x).yes() || !outside_B(a.scaled(r) * x))
    throw std::logic_error(std::string(what) + ": postcondition failed");
}

}  // namespace

Matrix witness_two(const Field& f, Code a1, Code r) {
  require_witness_args(f, r, "witness_two");
  const Code minus_a1 = f->neg(a1);
  Code y = 0;
  for (Code c : f->elements())
    if (c != minus_a1) {
      y = c;
      break;
    }
  const Matrix Y(f, 2, {1, y, 0, f->neg(1)});
  const Matrix x = f->mul(r, r) == f->neg(1) ? Y.scaled(r) : Y;
  check_witness(x, two_base(f, a1), r, "witness_two");
  return x;
}

Matrix witness_three(const Field& f, Code a1, Code alpha, Code r) {
  require_witness_args(f, r, "witness_three");
  const Matrix a = three_base(f, a1, alpha);
  const Code r2 = f->mul(r, r);
  for (Code c : f->elements()) {
    const Code cond = f->sub(f->add(f->add(f->mul(c, c), f->mul(c, a1)), 1), r2);
    if (cond == 0) continue;
    const Matrix x(f, 3, {0, 1, c, 0, 0, f->neg(1), 1, c, 0});
    check_witness(x, a, r, "witness_three");
    return x;
  }
  throw ContractError("witness_three: no admissible parameter");
}

}  // namespace involkit
