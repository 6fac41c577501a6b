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

#include "involkit/poly.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "scan.hpp"

namespace involkit {

Polynomial::Polynomial(Field field, std::vector<Code> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (!field_) throw ContractError("polynomial without a field");
  for (Code c : coeffs_)
    if (c >= field_->size()) throw ContractError("polynomial coefficient out of range");
  strip();
}

void Polynomial::strip() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Polynomial Polynomial::monomial(const Field& f, int degree, Code c) {
  std::vector<Code> v(degree + 1, 0);
  v[degree] = c;
  return {f, std::move(v)};
}

Polynomial Polynomial::from_ints(const Field& f, const std::vector<std::int64_t>& c) {
  std::vector<Code> v;
  v.reserve(c.size());
  for (auto x : c) v.push_back(f->from_integer(x));
  return {f, std::move(v)};
}

Polynomial Polynomial::make_monic() const {
  if (is_zero()) throw ContractError("cannot make the zero polynomial monic");
  return scaled(field_->inv(leading()));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  require_same_field(field_, o.field_, "poly add");
  std::vector<Code> r(std::max(coeffs_.size(), o.coeffs_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  return {field_, std::move(r)};
}

Polynomial Polynomial::operator-() const {
  std::vector<Code> r(coeffs_);
  for (Code& c : r) c = field_->neg(c);
  return {field_, std::move(r)};
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  require_same_field(field_, o.field_, "poly mul");
  if (is_zero() || o.is_zero()) return zero(field_);
  std::vector<Code> r(coeffs_.size() + o.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      r[i + j] = field_->add(r[i + j], field_->mul(coeffs_[i], o.coeffs_[j]));
  }
  return {field_, std::move(r)};
}

Polynomial Polynomial::scaled(Code c) const {
  std::vector<Code> r(coeffs_);
  for (Code& x : r) x = field_->mul(x, c);
  return {field_, std::move(r)};
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw ContractError("negative polynomial power");
  Polynomial acc = one(field_);
  Polynomial base = *this;
  for (; e > 0; e >>= 1) {
    if (e & 1) acc = acc * base;
    if (e > 1) base = base * base;
  }
  return acc;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const {
  require_same_field(field_, divisor.field_, "poly divmod");
  if (divisor.is_zero()) throw ContractError("division by the zero polynomial");
  const int dd = divisor.degree();
  if (degree() < dd) return {zero(field_), *this};
  std::vector<Code> rem(coeffs_);
  std::vector<Code> quot(degree() - dd + 1, 0);
  const Code lead_inv = field_->inv(divisor.leading());
  for (int i = degree(); i >= dd; --i) {
    const Code c = field_->mul(rem[i], lead_inv);
    if (c == 0) continue;
    quot[i - dd] = c;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] = field_->sub(rem[i - dd + j], field_->mul(c, divisor.coeffs_[j]));
  }
  rem.resize(dd);
  return {Polynomial(field_, std::move(quot)), Polynomial(field_, std::move(rem))};
}

Code Polynomial::eval(Code x) const {
  Code acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_->add(field_->mul(acc, x), *it);
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return zero(field_);
  std::vector<Code> r(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    r[i - 1] = field_->mul(field_->from_integer(static_cast<std::int64_t>(i)), coeffs_[i]);
  return {field_, std::move(r)};
}

bool Polynomial::operator==(const Polynomial& o) const {
  require_same_field(field_, o.field_, "poly eq");
  return coeffs_ == o.coeffs_;
}

bool Polynomial::operator<(const Polynomial& o) const {
  require_same_field(field_, o.field_, "poly order");
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Code a = field_->lex_rank(coeffs_[i]);
    const Code b = field_->lex_rank(o.coeffs_[i]);
    if (a != b) return a < b;
  }
  return false;
}

std::string Polynomial::to_text() const {
  std::string s = "poly[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) s += (i ? "," : "") + field_->element_text(coeffs_[i]);
  return s + "]";
}

std::string Polynomial::pretty() const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const Code c = coeffs_[i];
    if (c == 0) continue;
    if (!s.empty()) s += '+';
    if (c != 1 || i == 0) s += field_->element_text(c);
    if (i >= 1) s += 'x';
    if (i >= 2) s += '^' + std::to_string(i);
  }
  return s;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a;
  Polynomial y = b;
  while (!y.is_zero()) {
    Polynomial r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.is_zero() ? x : x.make_monic();
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial::zero(a.field());
  return ((a * b) / gcd(a, b)).make_monic();
}

Polynomial parse_polynomial(const Field& f, std::string_view text) {
  detail::Scanner sc(text);
  sc.expect("poly");
  sc.expect('[');
  std::vector<Code> c;
  if (!sc.consume(']')) {
    do {
      c.push_back(f->parse_element(sc.balanced_token()));
    } while (sc.consume(','));
    sc.expect(']');
  }
  sc.require_end();
  return {f, std::move(c)};
}

namespace {

void require_reciprocal_domain(const Polynomial& f) {
  if (!f.is_monic()) throw ContractError("reciprocal requires a monic polynomial");
  if (f.coeff(0) == 0) throw ContractError("reciprocal requires a nonzero constant term");
}

}  // namespace

Polynomial reciprocal(const Polynomial& f) {
  require_reciprocal_domain(f);
  const auto& F = f.field();
  const Code a0_inv = F->inv(f.coeff(0));
  const int n = f.degree();
  std::vector<Code> r(n + 1);
  for (int i = 0; i <= n; ++i) r[i] = F->mul(a0_inv, f.coeff(n - i));
  return {F, std::move(r)};
}

bool is_self_reciprocal(const Polynomial& f) {
  require_reciprocal_domain(f);
  const auto& F = f.field();
  const Code a0 = f.coeff(0);
  if (F->mul(a0, a0) != 1) return false;
  const Code a0_inv = F->inv(a0);
  const int n = f.degree();
  for (int k = 1; k <= n - 1; ++k)
    if (f.coeff(n - k) != F->mul(a0_inv, f.coeff(k))) return false;
  return true;
}

Polynomial Factorization::expand(const Field& f) const {
  Polynomial acc = Polynomial::constant(f, unit);
  for (const auto& [p, m] : factors) acc = acc * p.pow(m);
  return acc;
}

namespace {

using IrreducibleKey = std::tuple<int, std::vector<int>, int>;

struct IrreducibleCache {
  std::mutex mutex;
  std::map<IrreducibleKey, std::unique_ptr<std::vector<Polynomial>>> lists;
};

IrreducibleCache& irreducible_cache() {
  static IrreducibleCache cache;
  return cache;
}

std::vector<Polynomial> compute_irreducibles(const Field& f, int degree) {
  const Code q = f->size();
  const auto& elems = f->elements();
  std::vector<Polynomial> out;
  std::uint64_t count = 1;
  for (int i = 0; i < degree; ++i) count *= q;
  std::vector<Code> c(degree + 1, 0);
  c[degree] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    // c_0 is the most significant digit so the list comes out sorted.
    std::uint64_t rest = idx;
    for (int j = degree - 1; j >= 0; --j) {
      c[j] = elems[rest % q];
      rest /= q;
    }
    if (degree > 1 && c[0] == 0) continue;
    Polynomial cand(f, c);
    bool irreducible = true;
    for (int d = 1; 2 * d <= degree && irreducible; ++d)
      for (const auto& h : monic_irreducibles(f, d))
        if (h.divides(cand)) {
          irreducible = false;
          break;
        }
    if (irreducible) out.push_back(std::move(cand));
  }
  return out;
}

}  // namespace

const std::vector<Polynomial>& monic_irreducibles(const Field& f, int degree) {
  if (degree < 1) throw ContractError("irreducible degree must be >= 1");
  auto& cache = irreducible_cache();
  IrreducibleKey key{f->characteristic(), f->modulus(), degree};
  {
    std::lock_guard lock(cache.mutex);
    auto it = cache.lists.find(key);
    if (it != cache.lists.end()) return *it->second;
  }
  // Computed outside the lock: the recursion re-enters this function.
  auto list = std::make_unique<std::vector<Polynomial>>(compute_irreducibles(f, degree));
  std::lock_guard lock(cache.mutex);
  auto [it, inserted] = cache.lists.emplace(std::move(key), std::move(list));
  return *it->second;
}

Factorization factor(const Polynomial& f) {
  if (f.is_zero()) throw ContractError("cannot factor the zero polynomial");
  const auto& F = f.field();
  Factorization result;
  result.unit = f.leading();
  Polynomial rest = f.make_monic();
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    for (const auto& h : monic_irreducibles(F, d)) {
      if (2 * d > rest.degree()) break;
      int mult = 0;
      while (true) {
        auto [quot, rem] = rest.divmod(h);
        if (!rem.is_zero()) break;
        rest = std::move(quot);
        ++mult;
      }
      if (mult > 0) result.factors.emplace_back(h, mult);
    }
  }
  if (rest.degree() >= 1) {
    auto it = std::find_if(result.factors.begin(), result.factors.end(), [&](const auto& e) { return e.first == rest; });
    if (it != result.factors.end())
      ++it->second;
    else
      result.factors.emplace_back(rest, 1);
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return result;
}

bool is_irreducible(const Polynomial& f) {
  if (f.degree() < 1) return false;
  const auto fac = factor(f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

bool power_of_self_reciprocal_irreducible(const Polynomial& f) {
  require_reciprocal_domain(f);
  const auto fac = factor(f);
  return fac.factors.size() == 1 && is_self_reciprocal(fac.factors[0].first);
}

}  // namespace involkit
